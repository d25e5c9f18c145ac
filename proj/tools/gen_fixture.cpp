#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "osn/dataset.hpp"
#include "osn/serialize.hpp"

// Writes a small synthetic check-in dataset with known exponents, in the
// same two-file format the validate-dataset command reads. The bundled copy
// under data/fixture/ was produced by this tool with its defaults.
int main(int argc, char** argv) {
    CLI::App app{"generate a synthetic check-in fixture"};
    osn::FixtureSpec spec;
    spec.n = 400;
    spec.box_km = 60.0;
    spec.seed = 417;
    std::string out_dir = "data/fixture";
    app.add_option("--n", spec.n, "user count");
    app.add_option("--gamma", spec.gamma, "degree exponent");
    app.add_option("--beta", spec.beta, "formation exponent");
    app.add_option("--box-km", spec.box_km, "square side, km");
    app.add_option("--seed", spec.seed, "RNG seed");
    app.add_option("--out-dir", out_dir, "output directory (must exist)");
    CLI11_PARSE(app, argc, argv);

    try {
        const osn::GeoFixture fx = osn::gen_synthetic_geo_fixture(spec);
        osn::write_text_file(out_dir + "/edges.txt", osn::edges_text(fx.edges));
        osn::write_text_file(out_dir + "/checkins.txt", osn::checkins_text(fx.checkins));
        std::printf("wrote %s/{edges.txt,checkins.txt}: %zu users, %zu directed edges\n",
                    out_dir.c_str(), fx.checkins.size(), fx.edges.size());
        std::printf("box: lat [%.4f, %.4f], lon [%.4f, %.4f]\n", fx.box.lat_min,
                    fx.box.lat_max, fx.box.lon_min, fx.box.lon_max);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
