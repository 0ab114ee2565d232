// Copyright 2026 The signdicke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/errors.hpp"

namespace signdicke {

using Complex = std::complex<double>;

inline constexpr double kPauliDropTolerance = 1e-12;

/// Tensor product of Hermitian Pauli letters in symplectic form. Qubit 0 is
/// the leftmost letter and the most significant bit of both masks. A qubit
/// with x=1,z=0 holds X, x=0,z=1 holds Z and x=1,z=1 holds Y.
struct PauliString {
    int n = 0;
    Bits x = 0;
    Bits z = 0;

    static PauliString identity(int n) {
        check_width(n);
        return PauliString{n, 0, 0};
    }

    static PauliString from_letters(std::string_view letters) {
        PauliString p;
        p.n = static_cast<int>(letters.size());
        check_width(p.n);
        for (int q = 0; q < p.n; ++q) {
            p.set(q, letters[static_cast<std::size_t>(q)]);
        }
        return p;
    }

    /// Single letter on qubit q of an n-qubit register.
    static PauliString single(int n, int q, char letter) {
        PauliString p = identity(n);
        p.set(q, letter);
        return p;
    }

    char letter(int q) const {
        const Bits m = qubit_mask(n, q);
        const bool xb = (x & m) != 0;
        const bool zb = (z & m) != 0;
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }

    void set(int q, char letter) {
        if (q < 0 || q >= n) {
            throw DomainError("Pauli qubit index " + std::to_string(q) + " out of range");
        }
        const Bits m = qubit_mask(n, q);
        x &= ~m;
        z &= ~m;
        switch (letter) {
            case 'I': break;
            case 'X': x |= m; break;
            case 'Y': x |= m; z |= m; break;
            case 'Z': z |= m; break;
            default: throw DomainError(std::string("invalid Pauli letter '") + letter + "'");
        }
    }

    std::string letters() const {
        std::string s(static_cast<std::size_t>(n), 'I');
        for (int q = 0; q < n; ++q) {
            s[static_cast<std::size_t>(q)] = letter(q);
        }
        return s;
    }

    /// Number of non-identity letters.
    int weight() const { return std::popcount(x | z); }
    int y_count() const { return std::popcount(x & z); }

    /// Canonical order: letter-by-letter from qubit 0 with I < X < Y < Z.
    friend bool operator<(const PauliString& a, const PauliString& b) {
        if (a.n != b.n) {
            return a.n < b.n;
        }
        for (int q = 0; q < a.n; ++q) {
            char la = a.letter(q);
            char lb = b.letter(q);
            if (la != lb) {
                return la < lb;
            }
        }
        return false;
    }
    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    static void check_width(int n) {
        if (n < 1 || n > kMaxQubits) {
            throw DomainError("Pauli string width must be in [1, 64]");
        }
    }
};

/// Product a*b = i^phase * c; returns (phase mod 4, c).
inline std::pair<int, PauliString> multiply(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) {
        throw DomainError("Pauli product of strings with different widths");
    }
    const Bits ax = a.x & ~a.z, ay = a.x & a.z, az = ~a.x & a.z;
    const Bits bx = b.x & ~b.z, by = b.x & b.z, bz = ~b.x & b.z;
    // XY = iZ, YZ = iX, ZX = iY and the reversed products carry -i.
    const int plus = std::popcount((ax & by) | (ay & bz) | (az & bx));
    const int minus = std::popcount((ay & bx) | (az & by) | (ax & bz));
    const int phase = ((plus - minus) % 4 + 4) % 4;
    return {phase, PauliString{a.n, a.x ^ b.x, a.z ^ b.z}};
}

inline Complex i_power(int phase) {
    switch (((phase % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// P|b> = amplitude * |target>.
struct PauliAction {
    Bits target;
    Complex amplitude;
};

inline PauliAction act_on_basis(const PauliString& p, Bits b) {
    Complex amp = i_power(p.y_count());
    if (std::popcount(b & p.z) % 2 != 0) {
        amp = -amp;
    }
    return {b ^ p.x, amp};
}

struct PauliTerm {
    Complex coefficient;
    PauliString string;
};

/// Linear combination of Pauli strings over a fixed register. Coefficients are
/// stored as complex numbers so intermediate products are representable; a
/// Hermitian sum has all imaginary parts zero.
class PauliSum {
public:
    explicit PauliSum(int n) : n_(n) {
        if (n < 1 || n > kMaxQubits) {
            throw DomainError("PauliSum width must be in [1, 64]");
        }
    }

    PauliSum(int n, std::vector<PauliTerm> terms) : PauliSum(n) {
        for (const auto& t : terms) {
            check(t.string);
        }
        terms_ = std::move(terms);
        collect();
    }

    static PauliSum identity(int n, Complex c = 1.0) {
        PauliSum s(n);
        s.add(c, PauliString::identity(n));
        return s;
    }

    int num_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    /// Appends a term and re-canonicalizes.
    PauliSum& add(Complex c, const PauliString& p) {
        check(p);
        terms_.push_back({c, p});
        collect();
        return *this;
    }

    PauliSum& add(Complex c, std::string_view letters) { return add(c, PauliString::from_letters(letters)); }

    /// Merges duplicate strings, drops coefficients below the tolerance and
    /// sorts by letters.
    PauliSum& collect(double tolerance = kPauliDropTolerance) {
        std::map<PauliString, Complex> acc;
        for (const auto& t : terms_) {
            acc[t.string] += t.coefficient;
        }
        terms_.clear();
        for (const auto& [p, c] : acc) {
            Complex v = c;
            if (std::abs(v.imag()) < tolerance) {
                v.imag(0.0);
            }
            if (std::abs(v.real()) < tolerance) {
                v.real(0.0);
            }
            if (v != Complex{0.0, 0.0}) {
                terms_.push_back({v, p});
            }
        }
        return *this;
    }

    bool is_hermitian(double tolerance = kPauliDropTolerance) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const PauliTerm& t) { return std::abs(t.coefficient.imag()) <= tolerance; });
    }

    /// Coefficient of the given string, zero if absent.
    Complex coefficient(const PauliString& p) const {
        for (const auto& t : terms_) {
            if (t.string == p) {
                return t.coefficient;
            }
        }
        return 0.0;
    }
    Complex coefficient(std::string_view letters) const { return coefficient(PauliString::from_letters(letters)); }

    int max_weight() const {
        int w = 0;
        for (const auto& t : terms_) {
            w = std::max(w, t.string.weight());
        }
        return w;
    }

    friend PauliSum operator+(PauliSum a, const PauliSum& b) {
        a.check_width(b);
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        a.collect();
        return a;
    }

    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return std::move(a) + b * Complex{-1.0, 0.0}; }

    friend PauliSum operator*(PauliSum a, Complex c) {
        for (auto& t : a.terms_) {
            t.coefficient *= c;
        }
        a.collect();
        return a;
    }

    friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
        a.check_width(b);
        PauliSum out(a.n_);
        out.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                auto [phase, p] = multiply(ta.string, tb.string);
                out.terms_.push_back({ta.coefficient * tb.coefficient * i_power(phase), p});
            }
        }
        out.collect();
        return out;
    }

    /// Exact structural equality after canonicalization, with a coefficient
    /// tolerance.
    bool approx_equal(const PauliSum& other, double tolerance = 1e-12) const {
        if (n_ != other.n_ || terms_.size() != other.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (!(terms_[i].string == other.terms_[i].string) ||
                std::abs(terms_[i].coefficient - other.terms_[i].coefficient) > tolerance) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const PauliSum& a, const PauliSum& b) { return a.approx_equal(b, 0.0); }

private:
    void check(const PauliString& p) const {
        if (p.n != n_) {
            throw DomainError("Pauli string width " + std::to_string(p.n) + " does not match sum width " +
                              std::to_string(n_));
        }
    }
    void check_width(const PauliSum& b) const {
        if (b.n_ != n_) {
            throw DomainError("PauliSum widths differ");
        }
    }

    int n_;
    std::vector<PauliTerm> terms_;
};

inline PauliSum commutator(const PauliSum& a, const PauliSum& b) { return a * b - b * a; }

/// Sum_i Z_i, the excitation-number generator up to an affine shift.
inline PauliSum total_z(int n) {
    std::vector<PauliTerm> terms;
    for (int q = 0; q < n; ++q) {
        terms.push_back({1.0, PauliString::single(n, q, 'Z')});
    }
    return PauliSum(n, std::move(terms));
}

namespace detail {

inline std::string format_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// One term per line: "coeff letters". Terms with an imaginary part are
/// written as "re+imi letters".
inline void dump_pauli_sum(std::ostream& out, const PauliSum& s) {
    for (const auto& t : s.terms()) {
        out << detail::format_real(t.coefficient.real());
        if (t.coefficient.imag() != 0.0) {
            out << (t.coefficient.imag() < 0 ? "" : "+") << detail::format_real(t.coefficient.imag()) << 'i';
        }
        out << ' ' << t.string.letters() << '\n';
    }
}

inline std::string to_string(const PauliSum& s) {
    std::ostringstream os;
    dump_pauli_sum(os, s);
    return os.str();
}

/// Reads the real-coefficient dump format. Blank lines and '#' comments are
/// skipped. The register width is taken from the first term.
inline PauliSum parse_pauli_sum(std::istream& in) {
    std::string line;
    std::vector<std::pair<double, std::string>> rows;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string coeff;
        std::string letters;
        if (!(ls >> coeff)) {
            continue;
        }
        double c = 0.0;
        auto res = std::from_chars(coeff.data(), coeff.data() + coeff.size(), c);
        if (res.ec != std::errc{} || res.ptr != coeff.data() + coeff.size() || !(ls >> letters)) {
            throw DomainError("malformed Pauli term on line " + std::to_string(lineno));
        }
        std::string extra;
        if (ls >> extra) {
            throw DomainError("trailing text on Pauli term line " + std::to_string(lineno));
        }
        rows.emplace_back(c, letters);
    }
    if (rows.empty()) {
        throw DomainError("no Pauli terms found");
    }
    const auto n = static_cast<int>(rows.front().second.size());
    std::vector<PauliTerm> terms;
    for (const auto& [c, letters] : rows) {
        if (static_cast<int>(letters.size()) != n) {
            throw DomainError("inconsistent Pauli string widths");
        }
        terms.push_back({c, PauliString::from_letters(letters)});
    }
    return PauliSum(n, std::move(terms));
}

}  // namespace signdicke
