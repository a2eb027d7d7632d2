// Copyright 2026 The samlfd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "samlfd/session.hpp"

using namespace samlfd;
using testing::error_of;
using json = nlohmann::json;

namespace {

SessionRequest small_request(const std::string& shape, MetricId metric) {
  SessionRequest req;
  req.demo = bundled_shape(shape);
  req.metric = metric;
  req.resolution = 5;
  return req;
}

NamedTrajectory helix() {
  SampleMatrix m(100, 3);
  for (Eigen::Index i = 0; i < 100; ++i) {
    const double t = static_cast<double>(i) / 99.0;
    m.row(i) << std::cos(6.0 * t), std::sin(6.0 * t), 2.0 * t;
  }
  return {"helix", "test", Trajectory(m)};
}

}  // namespace

TEST_SUITE("session") {

TEST_CASE("request parsing defaults") {
  const auto req = session_request_from_json(R"({"shape":"sshape"})");
  CHECK(req.demo.name == "sshape");
  CHECK(req.metric == MetricId::Frechet);
  CHECK(req.constraint == ConstraintKind::Initial);
  CHECK(req.reps.size() == 3);
  CHECK(req.normalization == NormalizationScope::Joint);
  CHECK(req.resolution == 9);
  CHECK(req.extent_fraction == 0.25);
  CHECK(req.classifier == ClassifierKind::KNN);
  CHECK_FALSE(req.robust.has_value());
  CHECK(req.representation.ja.lambda == 20.0);
  CHECK(req.representation.dmp.num_basis == 50);
}

TEST_CASE("request parsing overrides") {
  const auto req = session_request_from_json(R"({
    "demo": {"name": "raw", "samples": [[0,0],[1,0],[2,1],[3,3]]}, "preprocess": false,
    "metric": "dtw", "constraint": "final", "representations": "lte,ja",
    "normalization": "per_representation", "resolution": 4, "extent_fraction": 0.5,
    "classifier": "csvc", "robust": 0.8, "ja": {"lambda": 5}, "dmp": {"num_basis": 10, "tau": 2},
    "knn": {"k": 3}, "svc": {"c": 1, "gamma": 0.5}, "endpoint_fraction": 0.2, "workers": 2})");
  CHECK(req.demo.trajectory.size() == 4);
  CHECK(req.metric == MetricId::DTW);
  CHECK(req.constraint == ConstraintKind::Final);
  CHECK(req.reps == std::vector{Representation::JA, Representation::LTE});
  CHECK(req.normalization == NormalizationScope::PerRepresentation);
  CHECK(req.resolution == 4);
  CHECK(req.classifier == ClassifierKind::CSVC);
  CHECK(req.robust == 0.8);
  CHECK(req.representation.ja.lambda == 5.0);
  CHECK(req.representation.dmp.tau == 2.0);
  CHECK(req.knn.k == 3);
  CHECK(req.svc.gamma == 0.5);
  CHECK(req.metric_options.endpoint_fraction == 0.2);
  CHECK(req.workers == 2);

  const auto pre = session_request_from_json(R"({"demo": {"samples": [[0,0],[1,0],[2,1],[3,3]]}})");
  CHECK(pre.demo.trajectory.size() == 100);
}

TEST_CASE("request errors") {
  CHECK(error_of([] { session_request_from_json("{"); }) == ErrorCode::Parse);
  CHECK(error_of([] { session_request_from_json("{}"); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([] { session_request_from_json(R"({"shape":"circle"})"); }) == ErrorCode::NotFound);
  CHECK(error_of([] { session_request_from_json(R"({"shape":"line","metric":"cosine"})"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([] { session_request_from_json(R"({"shape":"line","constraint":"both"})"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([] { session_request_from_json(R"({"shape":"line","robust":2})"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([] { session_request_from_json(R"({"shape":"line","resolution":"nine"})"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_of([] { session_request_from_json(R"({"demo":{"samples":[[0,0],[1,null]]}})"); }) ==
        ErrorCode::NonFinite);
}

TEST_CASE("serialized session round-trips byte for byte") {
  auto req = small_request("writing", MetricId::Hausdorff);
  req.robust = 0.7;
  const auto session = Session::compute(req);
  const auto text = session.to_json();
  const auto restored = Session::from_json(text);
  CHECK(restored.to_json() == text);
  CHECK(restored.map().best_label == session.map().best_label);
  CHECK(Session::from_json(session.to_json(2)).to_json() == text);

  const auto doc = json::parse(text);
  CHECK(text.rfind("{\"version\":1,\"metric\":\"hausdorff\"", 0) == 0);
  CHECK(doc["grid"]["points"].size() == 25);
  CHECK(doc["scores"]["ja"].size() == 25);
  CHECK(doc["robust"]["mask"].size() == 25);
  CHECK(doc["demo"]["samples"].size() == 100);
}

TEST_CASE("reproduce at a grid point agrees with the map") {
  const auto session = Session::compute(small_request("sshape", MetricId::Frechet));
  const auto& map = session.map();
  for (std::size_t p = 0; p < map.grid.size(); p += 4) {
    const auto r = session.reproduce(map.grid.points[p]);
    CHECK(r.rep == map.best_label[p]);
    CHECK(r.similarity == doctest::Approx(map.best_score[p]));
  }
  const auto doc = json::parse(reproduction_to_json(session.reproduce(map.grid.points[0])));
  CHECK(doc["trajectory"]["samples"].size() == 100);
  CHECK(doc.contains("raw_distance"));
  CHECK(error_of([&] { session.reproduce(testing::pt(0, 0, 0)); }) == ErrorCode::Dimension);
}

TEST_CASE("region JSON") {
  const auto session = Session::compute(small_request("loop", MetricId::SSE));
  const auto doc = json::parse(region_to_json(session, 0.5));
  REQUIRE(doc["labels"].size() == session.map().grid.size());
  for (std::size_t p = 0; p < session.map().grid.size(); ++p) {
    CHECK(doc["labels"][p] == to_string(session.map().best_label[p]));
    CHECK(doc["robust"]["mask"][p] == (session.map().best_score[p] >= 0.5));
  }
  CHECK_FALSE(json::parse(region_to_json(session, std::nullopt)).contains("robust"));
}

TEST_CASE("three-dimensional demos") {
  SessionRequest req;
  req.demo = helix();
  req.resolution = 3;
  const auto session = Session::compute(req);
  CHECK(session.map().grid.size() == 27);
  CHECK(Session::from_json(session.to_json()).to_json() == session.to_json());
}

TEST_CASE("heatmap PNG") {
  const auto session = Session::compute(small_request("zigzag", MetricId::DTW));
  const auto path = std::filesystem::temp_directory_path() / "samlfd_region_test.png";
  write_region_png(session.map(), path, 0.5, 4);
  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::filesystem::remove(path);
  REQUIRE(bytes.size() > 24);
  CHECK(bytes[1] == 'P');
  CHECK(bytes[2] == 'N');
  CHECK(bytes[3] == 'G');
  const auto be32 = [&](std::size_t at) {
    return (bytes[at] << 24) | (bytes[at + 1] << 16) | (bytes[at + 2] << 8) | bytes[at + 3];
  };
  CHECK(be32(16) == 20);
  CHECK(be32(20) == 20);
  CHECK(representation_color(Representation::JA) == std::array<unsigned char, 3>{0xCF, 0x71, 0x75});
  CHECK(representation_color(Representation::LTE) == std::array<unsigned char, 3>{0x77, 0xB9, 0x86});
  CHECK(representation_color(Representation::DMP) == std::array<unsigned char, 3>{0x6F, 0x8F, 0xCF});
}

}
