#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "csense/image.hpp"

using namespace csense;

namespace {

std::string bytes(std::initializer_list<int> values) {
  std::string out;
  for (int v : values) out.push_back(static_cast<char>(v));
  return out;
}

ErrorKind decode_error(const std::string& data) {
  try {
    decode_netpbm(data);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::io;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("csense_image_" + name);
}

}  // namespace

TEST(DecodeNetpbm, GrayExample) {
  const ImageBuffer img = decode_netpbm("P5\n2 2\n255\n" + bytes({0, 255, 128, 64}));
  EXPECT_EQ(img.width, 2u);
  EXPECT_EQ(img.height, 2u);
  EXPECT_EQ(img.channels, 1u);
  EXPECT_EQ(img.pixels[0], 0.0);
  EXPECT_EQ(img.pixels[1], 1.0);
  EXPECT_NEAR(img.pixels[2], 0.50196, 1e-5);
  EXPECT_NEAR(img.pixels[3], 0.25098, 1e-5);
}

TEST(DecodeNetpbm, RedPixel) {
  const ImageBuffer img = decode_netpbm("P6\n1 1\n255\n" + bytes({255, 0, 0}));
  EXPECT_EQ(img.channels, 3u);
  EXPECT_EQ(img.channel(0)[0], 1.0);
  EXPECT_EQ(img.channel(1)[0], 0.0);
  EXPECT_EQ(img.channel(2)[0], 0.0);
}

TEST(DecodeNetpbm, RgbIsStoredPlanar) {
  const ImageBuffer img = decode_netpbm("P6 2 1 255\n" + bytes({10, 20, 30, 40, 50, 60}));
  Vector expected(6);
  expected << 10, 40, 20, 50, 30, 60;
  EXPECT_LT((img.pixels * 255.0 - expected).norm(), 1e-12);
}

TEST(DecodeNetpbm, HeaderComments) {
  const ImageBuffer img = decode_netpbm("P5\n# made by hand\n2 # width\n1\n# max\n255\n" + bytes({1, 2}));
  EXPECT_EQ(img.width, 2u);
  EXPECT_EQ(img.height, 1u);
  EXPECT_NEAR(img.pixels[1] * 255.0, 2.0, 1e-12);
}

TEST(DecodeNetpbm, Errors) {
  EXPECT_EQ(decode_error("P4\n1 1\n255\n" + bytes({0})), ErrorKind::format);
  EXPECT_EQ(decode_error("P2\n1 1\n255\n0"), ErrorKind::format);
  EXPECT_EQ(decode_error(""), ErrorKind::format);
  EXPECT_EQ(decode_error("P5\nx 1\n255\n"), ErrorKind::format);
  EXPECT_EQ(decode_error("P5\n0 1\n255\n"), ErrorKind::format);
  EXPECT_EQ(decode_error("P5\n2 2\n255\n" + bytes({1, 2, 3})), ErrorKind::truncation);
  EXPECT_EQ(decode_error("P5\n2 2\n"), ErrorKind::truncation);
  EXPECT_EQ(decode_error("P5\n1 1\n65535\n" + bytes({0, 0})), ErrorKind::unsupported);
  EXPECT_EQ(decode_error("P5\n1 1\n15\n" + bytes({0})), ErrorKind::unsupported);
}

TEST(EncodeNetpbm, RoundTripIsByteIdentical) {
  const std::string gray = "P5\n2 2\n255\n" + bytes({0, 255, 128, 64});
  EXPECT_EQ(encode_netpbm(decode_netpbm(gray)), gray);
  const std::string rgb = "P6\n2 1\n255\n" + bytes({10, 20, 30, 40, 50, 60});
  EXPECT_EQ(encode_netpbm(decode_netpbm(rgb)), rgb);
}

TEST(Quantize, RoundsHalfAwayAndClamps) {
  EXPECT_EQ(quantize(0.5), 128);
  EXPECT_EQ(quantize(1.2), 255);
  EXPECT_EQ(quantize(-0.3), 0);
  EXPECT_EQ(quantize(0.0), 0);
  EXPECT_EQ(quantize(1.0), 255);
}

TEST(SaveImage, QuantizationBoundOnRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t channels : {1u, 3u}) {
    ImageBuffer img(7, 5, channels);
    for (auto& v : img.pixels) v = unit(rng);
    const auto path = temp_file("roundtrip" + std::to_string(channels) + ".pnm");
    save_image(img, path.string());
    const ImageBuffer back = load_image(path.string());
    std::filesystem::remove(path);
    ASSERT_TRUE(back.same_shape(img));
    EXPECT_LE((back.pixels - img.pixels).lpNorm<Eigen::Infinity>(), 1.0 / 510.0 + 1e-15);
  }
}

TEST(LoadImage, MissingFileIsIoError) {
  try {
    load_image("/nonexistent/dir/image.pgm");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(LoadImage, CheckedInAssets) {
  const std::string dir = CSENSE_ASSET_DIR;
  const ImageBuffer gray = load_image(dir + "/astronaut64.pgm");
  EXPECT_EQ(gray.width, 64u);
  EXPECT_EQ(gray.height, 64u);
  EXPECT_EQ(gray.channels, 1u);
  EXPECT_NO_THROW(gray.validate());
  const ImageBuffer rgb = load_image(dir + "/astronaut64.ppm");
  EXPECT_EQ(rgb.channels, 3u);
  const ImageBuffer grad = load_image(dir + "/gradient8.pgm");
  ASSERT_EQ(grad.pixels.size(), 64);
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(grad.pixels[i] * 255.0, 4.0 * i, 1e-12);
}

TEST(ImageBuffer, ValidateRejectsBrokenInvariants) {
  ImageBuffer img(2, 2, 1);
  EXPECT_NO_THROW(img.validate());
  img.pixels[0] = 1.5;
  EXPECT_THROW(img.validate(), Error);
  ImageBuffer two(2, 2, 2);
  EXPECT_THROW(two.validate(), Error);
  EXPECT_THROW(img.set_channel(0, Vector::Zero(3)), Error);
}

TEST(Psnr, Examples) {
  ImageBuffer a(4, 4, 1), b(4, 4, 1);
  a.pixels.setConstant(0.3);
  b.pixels.setConstant(0.3);
  EXPECT_EQ(psnr(a, b), std::numeric_limits<double>::infinity());
  b.pixels.setConstant(0.4);
  EXPECT_NEAR(psnr(a, b), 20.0, 1e-10);
  a.pixels.setZero();
  b.pixels.setOnes();
  EXPECT_NEAR(psnr(a, b), 0.0, 1e-15);
  EXPECT_THROW(psnr(a, ImageBuffer(4, 4, 3)), Error);
  EXPECT_THROW(psnr(a, ImageBuffer(2, 8, 1)), Error);
}
