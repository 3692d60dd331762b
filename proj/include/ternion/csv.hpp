#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ternion::csv {

//! Shortest decimal string that reads back to the same double.
std::string format_double(double v);

//! Minimal CSV writer; doubles use shortest round-trip rendering.
class Writer {
  public:
    explicit Writer(std::ostream& os) : os_(os) {}
    void header(std::initializer_list<std::string_view> names);
    void row(std::initializer_list<double> values);
    //! Row of preformatted cells.
    void cells(const std::vector<std::string>& cells);

  private:
    std::ostream& os_;
};

}  // namespace ternion::csv
