#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace enrichfp {

/// An element of a space: a fixed-length tuple of reals.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<double> coords) : coords_(coords) {}
    Point(std::vector<double> coords) : coords_(std::move(coords)) {}  // NOLINT(google-explicit-constructor)

    static Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    std::span<const double> coords() const noexcept { return coords_; }
    const std::vector<double>& vec() const noexcept { return coords_; }

    bool is_finite() const noexcept {
        for (double c : coords_) {
            if (!std::isfinite(c)) return false;
        }
        return true;
    }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

inline Point operator+(const Point& a, const Point& b) {
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Point operator-(const Point& a, const Point& b) {
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Point operator*(double s, const Point& a) {
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a[i];
    return out;
}

/// "(1, 2.5)" with shortest round-trip digits; for messages, not reports.
std::string to_string(const Point& p);

}  // namespace enrichfp
