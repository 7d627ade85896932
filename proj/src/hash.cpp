#include "cascadelab/hash.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cascadelab/error.hpp"

namespace cascadelab {

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string file_fingerprint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingInputError("missing input artifact: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return to_hex(fnv1a(buf.str()));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace cascadelab
