#include "bandrg/io.hpp"

#include "bandrg/error.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace bandrg {

std::string format_real(double value)
{
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place at " + path.string());
    }
}

} // namespace bandrg
