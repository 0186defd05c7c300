#pragma once

#include <vector>

#include "filtral/error.hpp"

namespace filtral {

/// Prime field F_p, 2 <= p <= 251. Elements are residues 0..p-1 stored as int.
class PrimeField {
public:
    PrimeField() : p_(2) { build_tables(); }

    explicit PrimeField(int p) : p_(p)
    {
        require(p >= 2 && p <= 251, ErrorCode::ParseError, "field characteristic out of range [2,251]");
        require(is_prime(p), ErrorCode::ParseError, "field characteristic must be prime");
        build_tables();
    }

    int p() const { return p_; }

    int normalize(long long x) const
    {
        long long r = x % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }

    int add(int a, int b) const
    {
        int s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    int sub(int a, int b) const
    {
        int s = a - b;
        return s < 0 ? s + p_ : s;
    }
    int mul(int a, int b) const { return a * b % p_; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }

    int inv(int a) const
    {
        require(a != 0, ErrorCode::Internal, "inverse of zero");
        return inv_[a];
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(int n)
    {
        if (n < 2)
            return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

private:
    void build_tables()
    {
        inv_.assign(p_, 0);
        for (int a = 1; a < p_; ++a) {
            int x = 1, b = a, e = p_ - 2;
            while (e) {
                if (e & 1)
                    x = x * b % p_;
                b = b * b % p_;
                e >>= 1;
            }
            inv_[a] = x;
        }
    }

    int p_;
    std::vector<int> inv_;
};

} // namespace filtral
