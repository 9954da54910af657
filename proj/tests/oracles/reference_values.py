"""Reference values frozen into the C++ unit tests (mpmath, 30 digits).

Run with `python3 tests/oracles/reference_values.py`; the output is pasted
into tests/reference_values.hpp.
"""
import itertools
import mpmath as mp

mp.mp.dps = 30


def c(z):
    z = mp.mpc(z)
    return "{%s, %s}" % (mp.nstr(z.real, 20, min_fixed=-5, max_fixed=5), mp.nstr(z.imag, 20, min_fixed=-5, max_fixed=5))


def partitions(n, max_len, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, max_len - 1, p):
            yield (p,) + rest


def transpose(lam):
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, (lam[0] if lam else 0) + 1))


def part(lam, i):
    return lam[i - 1] if i <= len(lam) else 0


def coeff(lam, mu, a, s):
    lt, mt = transpose(lam), transpose(mu)
    v = mp.mpc(1)
    for i in range(1, len(lam) + 1):
        for j in range(1, lam[i - 1] + 1):
            h = lam[i - 1] - i + part(lt, j) - j + 1
            d = part(lt, j) + part(mu, i) - i - j + 1 + 2 * s
            P = mp.fprod([i - j + s + ai for ai in a]) if a else 1
            v *= P / (h * h * d * d)
    for i in range(1, len(mu) + 1):
        for j in range(1, mu[i - 1] + 1):
            h = mu[i - 1] - i + part(mt, j) - j + 1
            d = part(lam, i) + part(mt, j) - i - j + 1 - 2 * s
            P = mp.fprod([i - j - s + ai for ai in a]) if a else 1
            v *= P / (h * h * d * d)
    return v


def restricted_sum(a, s, K, t, W):
    total = mp.mpc(0)
    for w in range(W + 1):
        shell = mp.mpc(0)
        for wl in range(w + 1):
            for lam in partitions(wl, K):
                for mu in partitions(w - wl, K):
                    shell += coeff(lam, mu, a, s)
        total += shell * mp.mpf(t) ** w
    return total


print("// log Gamma")
for z in [mp.mpc(0.5, 0), mp.mpc(2.5, 3.0), mp.mpc(-3.7, 0.4), mp.mpc(12.25, -7.5), mp.mpc(-0.3, -25.0), mp.mpc(150.5, 40.0)]:
    print("{%s, %s}," % (c(z), c(mp.loggamma(z))))
print("// Gamma")
for z in [mp.mpc(0.1, 0.2), mp.mpc(-4.5, 0.0), mp.mpc(7.3, -1.1), mp.mpc(-9.9, 0.05)]:
    print("{%s, %s}," % (c(z), c(mp.gamma(z))))
print("// Barnes G")
for z in [mp.mpc(0.5, 0), mp.mpc(1.5, 0), mp.mpc(2.7, 0.9), mp.mpc(-2.3, 0.0), mp.mpc(-0.6, 1.3), mp.mpc(8.4, -3.2), mp.mpc(-6.6, 0)]:
    print("{%s, %s}," % (c(z), c(mp.barnesg(z))))
print("// 0F3(;1.5,1.5,1;0.1)")
print(c(mp.hyper([], [1.5, 1.5, 1], 0.1)))
print("// 2F3(0.3+0.2i, -1.7; 1.4, 1.4, 1; -2.5)")
print(c(mp.hyper([mp.mpc(0.3, 0.2), -1.7], [1.4, 1.4, 1], -2.5)))
print("// 4F3(-0.2, 0.5, 1.1, 0.3; 1.6, 1.6, 1; 0.4)")
print(c(mp.hyper([-0.2, 0.5, 1.1, 0.3], [1.6, 1.6, 1], 0.4)))
print("// B_K goldens")
print("K=1 a=[] s=0.3 t=0.1:", c(restricted_sum([], mp.mpf("0.3"), 1, mp.mpf("0.1"), 40)))
print("K=2 a=[0.4,-0.1,0.7] s=0.26 t=0.05:", c(restricted_sum([mp.mpf("0.4"), mp.mpf("-0.1"), mp.mpf("0.7")], mp.mpf("0.26"), 2, mp.mpf("0.05"), 22)))
print("K=2 a=[] s=0.26+0.1i t=0.1:", c(restricted_sum([], mp.mpc("0.26", "0.1"), 2, mp.mpf("0.1"), 26)))
