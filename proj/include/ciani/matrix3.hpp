#pragma once

#include <array>

#include "ciani/rational.hpp"

namespace ciani {

// Dense exact-rational 3x3 matrix.
struct Mat3 {
    std::array<std::array<Rat, 3>, 3> m{};

    static Mat3 identity() {
        Mat3 r;
        for (int i = 0; i < 3; ++i) r.m[i][i] = 1;
        return r;
    }

    Rat& operator()(int i, int j) { return m[i][j]; }
    const Rat& operator()(int i, int j) const { return m[i][j]; }
    bool operator==(const Mat3& o) const { return m == o.m; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Rat s(0);
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    Mat3 operator*(const Rat& c) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * c;
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }
    bool is_symmetric() const {
        return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1];
    }

    Rat det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

// Cofactor matrix: (Cof m)_{ij} = (-1)^{i+j} * minor_{ij}(m), so that
// m . t(Cof m) = det(m) . I. For symmetric m the result is symmetric.
inline Mat3 cofactor(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            // Using cyclic complements keeps the sign built in.
            r.m[i][j] = a.m[r0][c0] * a.m[r1][c1] - a.m[r0][c1] * a.m[r1][c0];
        }
    return r;
}

}  // namespace ciani
