#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "s2f/codec.hpp"
#include "s2f/pgm.hpp"
#include "s2f/watermark.hpp"

namespace fs = std::filesystem;
using namespace s2f;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("s2f_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  std::string p(const std::string& rel) const { return (root_ / rel).string(); }

  void write_watermark(const std::string& rel, int w, int h) {
    std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = (i % 3 == 0 || i % 7 == 1) ? 255 : 0;
    write_file_atomic(p(rel), save_pgm(Image(w, h, px)));
  }

  std::string csv(const std::string& rel) {
    const auto b = read_file(p(rel));
    return std::string(b.begin(), b.end());
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, StaticPipelineIsLossless) {
  ASSERT_EQ(run({"gen", "--size", "64x48", "--frames", "8", "--motion", "0,0",
                 "--seed", "3", p("orig")}),
            0)
      << err_.str();
  ASSERT_EQ(run({"encode", p("orig"), p("v.s2f")}), 0) << err_.str();
  ASSERT_EQ(run({"decode", p("v.s2f"), p("dec")}), 0) << err_.str();
  ASSERT_EQ(run({"metrics", p("orig"), p("dec"), p("r.csv")}), 0) << err_.str();

  std::istringstream lines(csv("r.csv"));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "frame,mse,psnr_db,wm_correlation,wm_ssim");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line, std::to_string(rows) + ",0,inf,,");
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST_F(CliTest, TranscodeThenExtractFromIntraFrame) {
  ASSERT_EQ(run({"gen", "--size", "256x256", "--frames", "7", "--motion", "4,-4",
                 p("orig")}),
            0);
  write_watermark("wm.pgm", 31, 64);
  ASSERT_EQ(run({"transcode", p("orig"), p("wm.pgm"), p("t.s2f")}), 0) << err_.str();
  ASSERT_EQ(run({"decode", p("t.s2f"), p("dec")}), 0);
  ASSERT_EQ(run({"extract", p("dec/frame_0006.pgm"), "--wm-size", "31x64",
                 p("got.pgm")}),
            0)
      << err_.str();
  EXPECT_EQ(read_file(p("got.pgm")), read_file(p("wm.pgm")));

  // Watermark size travels in the stream header.
  ASSERT_EQ(run({"extract", p("t.s2f"), "--frame", "0", p("got2.pgm")}), 0)
      << err_.str();
  EXPECT_EQ(read_file(p("got2.pgm")), read_file(p("wm.pgm")));

  ASSERT_EQ(run({"metrics", p("orig"), p("dec"), "--wm", p("wm.pgm"), p("r.csv")}),
            0)
      << err_.str();
  std::istringstream lines(csv("r.csv"));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line.substr(line.size() - 4), ",1,1");
}

TEST_F(CliTest, TwentyFrameGopLayout) {
  ASSERT_EQ(run({"gen", "--size", "64x64", "--frames", "20", "--motion", "8,4",
                 p("orig")}),
            0);
  ASSERT_EQ(run({"encode", p("orig"), p("v.s2f"), "--gop", "6", "--mv-dir",
                 p("mv")}),
            0);
  const S2fStream s = parse(read_file(p("v.s2f")));
  std::string pattern;
  for (const auto& r : s.records) pattern += r.type() == FrameType::Intra ? 'I' : 'P';
  EXPECT_EQ(pattern, "IPPPPPIPPPPPIPPPPPIP");
  EXPECT_TRUE(fs::exists(p("mv/mv_0001.csv")));
  EXPECT_FALSE(fs::exists(p("mv/mv_0006.csv")));
}

TEST_F(CliTest, EmbedSingleFrameAndDirectory) {
  ASSERT_EQ(run({"gen", "--size", "32x32", "--frames", "2", p("orig")}), 0);
  write_watermark("wm.pgm", 4, 4);
  ASSERT_EQ(run({"embed", p("orig/frame_0000.pgm"), p("wm.pgm"), p("one.pgm")}), 0)
      << err_.str();
  EXPECT_EQ(extract(read_pgm_frame(p("one.pgm")), 4, 4).image(),
            read_pgm_image(p("wm.pgm")));
  ASSERT_EQ(run({"embed", p("orig"), p("wm.pgm"), p("marked")}), 0) << err_.str();
  EXPECT_EQ(list_sequence(p("marked")).size(), 2u);
}

TEST_F(CliTest, OutputsAreIdempotent) {
  ASSERT_EQ(run({"gen", "--size", "32x32", "--frames", "9", "--motion", "4,0",
                 p("orig")}),
            0);
  ASSERT_EQ(run({"encode", p("orig"), p("a.s2f")}), 0);
  ASSERT_EQ(run({"encode", p("orig"), p("b.s2f")}), 0);
  EXPECT_EQ(read_file(p("a.s2f")), read_file(p("b.s2f")));
}

TEST_F(CliTest, ExitCodesByFailureClass) {
  EXPECT_EQ(run({}), cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}), cli::kUsage);
  EXPECT_EQ(run({"gen", "--size", "banana", p("g")}), cli::kUsage);
  EXPECT_EQ(run({"gen", "--motion", "40,0", p("g")}), cli::kUsage);
  EXPECT_EQ(run({"decode", p("missing.s2f"), p("out")}), cli::kIo);

  write_file_atomic(p("junk.s2f"), std::string("not a stream"));
  EXPECT_EQ(run({"decode", p("junk.s2f"), p("out")}), cli::kFormat);
  EXPECT_NE(err_.str().find("magic"), std::string::npos);
  EXPECT_EQ(err_.str().find('\n'), err_.str().size() - 1);  // one line
  EXPECT_FALSE(fs::exists(p("out")));

  ASSERT_EQ(run({"gen", "--size", "8x8", "--frames", "1", p("tiny")}), 0);
  write_watermark("big.pgm", 4, 4);
  EXPECT_EQ(run({"embed", p("tiny/frame_0000.pgm"), p("big.pgm"), p("x.pgm")}),
            cli::kCapacity);
  EXPECT_FALSE(fs::exists(p("x.pgm")));

  ASSERT_EQ(run({"gen", "--size", "16x16", "--frames", "1", p("mixed")}), 0);
  write_file_atomic(p("mixed/frame_0001.pgm"), save_pgm(Frame(8, 8)));
  EXPECT_EQ(run({"encode", p("mixed"), p("m.s2f")}), cli::kCapacity);
  EXPECT_FALSE(fs::exists(p("m.s2f")));

  EXPECT_EQ(run({"extract", p("tiny/frame_0000.pgm"), p("w.pgm")}), cli::kUsage);
}

TEST_F(CliTest, HelpSucceeds) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out_.str().find("transcode"), std::string::npos);
}
