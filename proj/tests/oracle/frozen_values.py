"""Arbitrary-precision oracle for the frozen constants used by the C++ tests.

Independent of the C++ code paths: solves the quartic systems with mpmath's
findroot at 50 digits. Run `python3 tests/oracle/frozen_values.py` to print
the values that are hard-coded in the test suites.
"""
import mpmath as mp

mp.mp.dps = 50


def q(t, k):
    return (1 + t) ** 4 + (k - 1) * t ** 4


def alpha(k):
    # negative root of q(t) = 2, below -k^{-1/4}
    lo, hi = mp.mpf(-1) - mp.root(2, 4), -mp.root(k, 4) ** -1
    return mp.findroot(lambda t: q(t, k) - 2, (lo - 1, hi), solver="anderson")


def beta(k):
    return mp.findroot(lambda t: q(t, k) - 2, (mp.mpf(0), mp.root(k, 4) ** -1), solver="anderson")


def case_one(k):
    a = alpha(k)
    f = lambda t: (q(t, k) / k) ** mp.mpf(0.25)
    x = mp.findroot(lambda t: f(t) - t + a, (mp.mpf(-3), mp.mpf(0)), solver="anderson")
    return x, x - a, a


def even_ratio(n):
    k = n // 2
    _, y, _ = case_one(k)
    return 1 / (mp.root(k, 4) * y)


def odd_ratio(n):
    k = (n - 1) // 2
    _, y1, _ = case_one(k)
    _, y2, _ = case_one(k + 1)
    s = k * y1 ** 4 + (k + 1) * y2 ** 4
    return mp.root(2 / s, 4)


if __name__ == "__main__":
    print("schuette(3,4) =", mp.nstr(mp.root(mp.mpf(12) / 7, 4), 20))
    print("eps(10,4)     =", mp.nstr(4 * mp.log(mp.mpf(1.2)) / mp.log(12), 20))
    print("eps(1e6,4)*n*ln n =", mp.nstr(4 * mp.log(1 + mp.mpf(2) / 10**6) / mp.log(10**6 + 2) * 10**6 * mp.log(10**6), 20))
    print("f(-1,k=2)     =", mp.nstr(mp.root(mp.mpf(1) / 2, 4), 20))
    x, y, a = case_one(1)
    print("k=1 x,y,alpha =", mp.nstr(x, 20), mp.nstr(y, 20), mp.nstr(a, 20))
    for k in (2, 3, 64):
        x, y, a = case_one(k)
        print(f"k={k} x,y,alpha,beta =", mp.nstr(x, 20), mp.nstr(y, 20), mp.nstr(a, 20), mp.nstr(beta(k), 20))
    for k in (10**2, 10**3, 10**4, 10**5):
        x, y, a = case_one(k)
        sx = abs(x + k ** -0.5 - mp.mpf(k) ** -0.75) * k
        sy = abs(y - mp.mpf(k) ** -0.25 + mp.mpf(k) ** -0.75) * k
        sa = abs(a + mp.mpf(k) ** -0.25 + mp.mpf(k) ** -0.5 - 2 * mp.mpf(k) ** -0.75) * k
        print(f"k={k} scaled x,y,alpha:", mp.nstr(sx, 8), mp.nstr(sy, 8), mp.nstr(sa, 8))
    for n in (2, 4, 16, 64, 256, 1024, 4096):
        r = even_ratio(n)
        print(f"even n={n} ratio={mp.nstr(r, 20)} scaled={mp.nstr(abs(r - 1 - mp.sqrt(mp.mpf(2) / n)) * mp.mpf(n) ** 0.75, 8)}")
    for n in (3, 5, 17, 65, 257):
        r = odd_ratio(n)
        print(f"odd n={n} ratio={mp.nstr(r, 20)} scaled={mp.nstr(abs(r - 1 - mp.sqrt(mp.mpf(2) / n)) * mp.mpf(n) ** 0.75, 8)}")
