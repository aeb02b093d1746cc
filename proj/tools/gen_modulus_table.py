#!/usr/bin/env python3
"""Regenerates src/gf/modulus_table.inc.

For every prime power p^k <= 2^20 with k >= 2 this picks the monic primitive
polynomial of degree k over GF(p) whose lower coefficients, read as a
little-endian base-p integer, are smallest.  Primitive moduli make x a
generator of the multiplicative group, which the log/exp tables rely on.
"""
import sys

LIMIT = 1 << 20


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def factor(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def mulmod(a, b, f, p):
    k = len(f) - 1
    res = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * f[i]) % p
    return res[:k]


def powmod_x(e, f, p):
    k = len(f) - 1
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2) if k >= 2 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive(f, p):
    k = len(f) - 1
    q = p ** k
    one = [1] + [0] * (k - 1)
    if f[0] == 0:
        return False
    if powmod_x(q - 1, f, p) != one:
        return False
    for r in factor(q - 1):
        if powmod_x((q - 1) // r, f, p) == one:
            return False
    return True


def main():
    rows = []
    for p in primes_upto(1 << 10):
        k = 2
        while p ** k <= LIMIT:
            for code in range(p ** k):
                low = []
                c = code
                for _ in range(k):
                    low.append(c % p)
                    c //= p
                f = low + [1]
                if is_primitive(f, p):
                    rows.append((p, k, low))
                    break
            k += 1
    out = sys.stdout
    out.write("// Generated by tools/gen_modulus_table.py. Do not edit.\n")
    out.write("// {p, k, {c0, c1, ..., c_{k-1}}}: modulus x^k + c_{k-1} x^{k-1} + ... + c0.\n")
    for p, k, low in rows:
        out.write("{%d, %d, {%s}},\n" % (p, k, ", ".join(str(c) for c in low)))


if __name__ == "__main__":
    main()
