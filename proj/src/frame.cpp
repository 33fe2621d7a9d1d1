#include "isomark/frame.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace isomark {

namespace {

Frame load_raw8(const std::filesystem::path& path, int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("raw8 load requires explicit positive dimensions");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Frame frame(width, height);
    const auto expected = static_cast<std::streamsize>(frame.pixel_count());
    in.read(reinterpret_cast<char*>(frame.pixels.data()), expected);
    const auto got = in.gcount();
    if (got != expected || in.peek() != std::ifstream::traits_type::eof()) {
        std::error_code ec;
        const auto actual = std::filesystem::file_size(path, ec);
        std::ostringstream msg;
        msg << path.string() << ": raw8 size mismatch, expected " << expected
            << " bytes, got " << (ec ? got : static_cast<std::streamsize>(actual));
        throw IoError(msg.str());
    }
    return frame;
}

int read_pgm_token(std::istream& in) {
    // Whitespace-separated integer; '#' starts a comment running to EOL.
    int ch = in.peek();
    while (ch == '#' || std::isspace(ch)) {
        if (ch == '#') in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        else in.get();
        ch = in.peek();
    }
    int value = -1;
    in >> value;
    if (!in) throw IoError("malformed PGM header");
    return value;
}

Frame load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P5") throw IoError(path.string() + ": not a binary PGM (P5) file");
    const int width = read_pgm_token(in);
    const int height = read_pgm_token(in);
    const int maxval = read_pgm_token(in);
    if (maxval != 255)
        throw IoError(path.string() + ": unsupported PGM maxval " +
                      std::to_string(maxval) + " (only 255 supported)");
    in.get();  // single whitespace after maxval
    Frame frame(width, height);
    const auto expected = static_cast<std::streamsize>(frame.pixel_count());
    in.read(reinterpret_cast<char*>(frame.pixels.data()), expected);
    if (in.gcount() != expected) {
        std::ostringstream msg;
        msg << path.string() << ": PGM payload truncated, expected " << expected
            << " bytes, got " << in.gcount();
        throw IoError(msg.str());
    }
    return frame;
}

}  // namespace

Frame load_frame(const std::filesystem::path& path, FrameFormat format,
                 int width, int height) {
    switch (format) {
        case FrameFormat::Raw8: return load_raw8(path, width, height);
        case FrameFormat::Pgm: return load_pgm(path);
    }
    throw std::invalid_argument("unknown frame format");
}

void write_frame(const Frame& frame, const std::filesystem::path& path,
                 FrameFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    if (format == FrameFormat::Pgm) {
        out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    }
    out.write(reinterpret_cast<const char*>(frame.pixels.data()),
              static_cast<std::streamsize>(frame.pixel_count()));
    if (!out) throw IoError("write failed: " + path.string());
}

Frame synthesize_frame(int width, int height, const SynthSpec& spec) {
    Frame frame(width, height);

    if (spec.well_separated) {
        const int rho = spec.separation_radius;
        const int min_sep = 2 * rho + 2;
        for (const auto& b : spec.blobs) {
            if (b.row < rho || b.row >= height - rho || b.col < rho ||
                b.col >= width - rho)
                throw std::invalid_argument("well-separated blob centre outside margins");
        }
        for (std::size_t i = 0; i < spec.blobs.size(); ++i) {
            for (std::size_t j = i + 1; j < spec.blobs.size(); ++j) {
                const int dy = std::abs(spec.blobs[i].row - spec.blobs[j].row);
                const int dx = std::abs(spec.blobs[i].col - spec.blobs[j].col);
                if (std::max(dy, dx) < min_sep)
                    throw std::invalid_argument("blobs violate the well-separated constraint");
            }
        }
    }

    for (const auto& b : spec.blobs) {
        if (b.peak > 255) throw std::invalid_argument("blob peak exceeds 255");
        const int extent = static_cast<int>(std::ceil(4.0 * b.sigma)) + 1;
        for (int dy = -extent; dy <= extent; ++dy) {
            for (int dx = -extent; dx <= extent; ++dx) {
                const int r = b.row + dy, c = b.col + dx;
                if (!frame.in_bounds(r, c)) continue;
                const double d2 = static_cast<double>(dy) * dy + static_cast<double>(dx) * dx;
                const double v = b.peak * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
                const int iv = static_cast<int>(std::lround(v));
                if (iv > frame.at(r, c)) frame.at(r, c) = static_cast<std::uint8_t>(iv);
            }
        }
    }

    if (spec.sun_disc) {
        const auto& s = *spec.sun_disc;
        const long long rr = static_cast<long long>(s.disc_radius) * s.disc_radius;
        for (int r = s.row - s.disc_radius; r <= s.row + s.disc_radius; ++r) {
            for (int c = s.col - s.disc_radius; c <= s.col + s.disc_radius; ++c) {
                if (!frame.in_bounds(r, c)) continue;
                const long long dy = r - s.row, dx = c - s.col;
                if (dy * dy + dx * dx <= rr)
                    frame.at(r, c) = static_cast<std::uint8_t>(s.intensity);
            }
        }
    }

    if (spec.noise_max > 0) {
        // Bounded draws via modulo keep the output identical across platforms;
        // std::uniform_int_distribution is implementation-defined.
        std::mt19937_64 rng(spec.seed);
        const std::uint64_t span = static_cast<std::uint64_t>(spec.noise_max) + 1;
        for (auto& px : frame.pixels) {
            const int noisy = px + static_cast<int>(rng() % span);
            px = static_cast<std::uint8_t>(std::min(noisy, 255));
        }
    }
    return frame;
}

SynthSpec random_scene(int width, int height, int max_blobs, std::uint64_t seed,
                       int radius, int noise_max) {
    if (max_blobs < 0) throw std::invalid_argument("max_blobs must be >= 0");
    SynthSpec spec;
    spec.seed = seed;
    spec.noise_max = noise_max;
    spec.well_separated = true;
    spec.separation_radius = radius;

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int margin = 3 * radius + 2;  // clean region for every engine
    const int min_sep = 4 * radius + 4;
    if (height - 2 * margin <= 0 || width - 2 * margin <= 0) return spec;

    const int want = max_blobs > 0 ? static_cast<int>(rng() % (max_blobs + 1)) : 0;
    int attempts = 0;
    while (static_cast<int>(spec.blobs.size()) < want && attempts < 1000) {
        ++attempts;
        SynthBlob blob;
        blob.row = margin + static_cast<int>(rng() % (height - 2 * margin));
        blob.col = margin + static_cast<int>(rng() % (width - 2 * margin));
        blob.peak = 180 + static_cast<int>(rng() % 76);
        blob.sigma = 0.9 + 0.1 * static_cast<double>(rng() % 7);
        bool clash = false;
        for (const auto& other : spec.blobs) {
            if (std::max(std::abs(blob.row - other.row), std::abs(blob.col - other.col)) <
                min_sep) {
                clash = true;
                break;
            }
        }
        if (!clash) spec.blobs.push_back(blob);
    }
    return spec;
}

}  // namespace isomark
