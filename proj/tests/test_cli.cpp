/*
   Copyright 2026 The gwchi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Outcome {
    int rc;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "gwchi");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = gwchi::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

const std::string kFermat = "field=Q; n=3; F=X0^6+X1^6+X2^6";

}  // namespace

TEST(Cli, CoverGolden) {
    const Outcome r = run({"cover", kFermat});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("chi = 2<1> + 11*H\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("beta = 3*H\n"), std::string::npos);
    EXPECT_NE(r.out.find("chi_blowup = 13*H\n"), std::string::npos);
    EXPECT_NE(r.out.find("rank 24, signature 2"), std::string::npos);
}

TEST(Cli, CoverJsonSchema) {
    const Outcome r = run({"--json", "cover", kFermat});
    ASSERT_EQ(r.rc, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("field"), "Q");
    EXPECT_EQ(j.at("n"), 3);
    EXPECT_EQ(j.at("chi").at("display"), "2<1> + 11*H");
    EXPECT_EQ(j.at("chi").at("rank"), 24);
    EXPECT_EQ(j.at("chi").at("signature"), 2);
    EXPECT_EQ(j.at("chi").at("hyperbolic"), 11);
    EXPECT_EQ(j.at("beta").at("display"), "3*H");
    ASSERT_EQ(j.at("points").size(), 2u);
    for (const auto& p : j.at("points")) {
        EXPECT_EQ(p.at("m"), 5);
        EXPECT_TRUE(p.contains("min_polys"));
        EXPECT_TRUE(p.contains("degree"));
        EXPECT_TRUE(p.contains("alpha_class"));
    }
    EXPECT_EQ(j.at("checks").at("bezout"), true);
}

TEST(Cli, FieldOverrideAndUnicode) {
    const Outcome r = run({"--field", "Fp:13", "cover", kFermat});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("chi = 12*H\n"), std::string::npos) << r.out;
    const Outcome u = run({"--unicode", "gw", "<3> + H"});
    EXPECT_EQ(u.rc, 0);
    EXPECT_NE(u.out.find("\xE2\x9F\xA8" "3" "\xE2\x9F\xA9"), std::string::npos) << u.out;
}

TEST(Cli, GwExpression) {
    const Outcome r = run({"gw", "(<3> + H)*(<1> + H)"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "<3> + 4*H");
}

TEST(Cli, TraceGaussian) {
    const Outcome r = run({"trace", "--ext", "z^2+1", "--mult", "1"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(r.out, "H\n");
    const Outcome r2 = run({"trace", "--ext", "z^2+1", "--ext", "w^2-3", "--mult", "1"});
    ASSERT_EQ(r2.rc, 0) << r2.err;
    EXPECT_EQ(r2.out, "2*H\n");
}

TEST(Cli, MilnorAndSs) {
    const Outcome m = run({"milnor", "--vars", "x,y", "--f", "x^2+y^3"});
    ASSERT_EQ(m.rc, 0) << m.err;
    EXPECT_EQ(m.out.substr(0, m.out.find('\n')), "H");
    const Outcome s = run({"ss", "--vars", "x", "--s", "x^3"});
    ASSERT_EQ(s.rc, 0) << s.err;
    EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "<1> + H");
    EXPECT_NE(s.out.find("Gram matrix: [[0, 0, 1], [0, 1, 0], [1, 0, 0]]"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwo) {
    const Outcome r = run({"cover", "field=Q; n=3; F=X0^6+X1^6+"});
    EXPECT_EQ(r.rc, 2);
    EXPECT_NE(r.err.find("line 1, column 27"), std::string::npos) << r.err;
    EXPECT_EQ(run({"--bogus"}).rc, 2);
    EXPECT_EQ(run({"cover", "field=Q; n=3"}).rc, 2);
    EXPECT_EQ(run({"cover", "field=R; n=3; F=X0^6"}).rc, 2);
    EXPECT_EQ(run({"--help"}).rc, 0);
}

TEST(Cli, ValidationExitsThree) {
    const Outcome r = run({"cover", "field=Q; n=3; F=X0^5+X1^5+X2^5"});
    EXPECT_EQ(r.rc, 3);
    EXPECT_NE(r.err.find("validation/wrong-degree"), std::string::npos) << r.err;
    EXPECT_EQ(run({"cover", "field=Q; n=1; F=-X0^2-X1^2-X2^2"}).rc, 3);
}

TEST(Cli, CapacityExitsFour) {
    const Outcome r = run({"--max-degree", "2", "cover", kFermat});
    EXPECT_EQ(r.rc, 4);
    EXPECT_NE(r.err.find("capacity/"), std::string::npos) << r.err;
}

TEST(Cli, MNotInvertibleExitsFive) {
    const Outcome r = run({"--field", "Fp:5", "cover", kFermat});
    EXPECT_EQ(r.rc, 5);
    EXPECT_NE(r.err.find("m-not-invertible"), std::string::npos) << r.err;
}

TEST(Cli, MovePoint) {
    const Outcome r = run({"cover", "field=Q; n=1; F=X0^2+X1^2+X2^2", "--move-point", "0,3,4"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("chi = 2<1> + H\n"), std::string::npos) << r.out;
    EXPECT_EQ(run({"cover", kFermat, "--move-point", "1,2"}).rc, 2);
}
