"""High-precision reference values for the threshold formulas.

Evaluated with mpmath at 50 digits, independent of the C++ implementation.
The printed values are frozen into tests/test_schedule.cpp and the
acceptance suite.
"""
from mpmath import mp, mpf, sqrt, log, e, ceil

mp.dps = 50


def logp(x):
    return max(mpf(0), log(x))


def tau(r):
    lp = logp(2 / r)
    if lp == 0:
        return mpf(1) / 4
    return min(mpf(1) / 4, r / sqrt(lp))


def base_rate(n, rank, delta):
    return (sqrt(rank) + sqrt(2 * log(2 / delta))) / sqrt(n)


def t_gauss(eps, n, rank, delta):
    r = base_rate(n, rank, delta)
    ta = tau(r)
    return (3 - 2 * eps) / (1 - 2 * eps) * (1 + r / sqrt(ta)) + sqrt(2 + 2 * log(1 / ta))


def t_subg(eps, n, p, delta, s, c0):
    r = 3 * sqrt(s) * (sqrt(p) + 2 * sqrt(log(2 / delta))) / sqrt(n)
    ta = tau(r)
    return (3 - 2 * eps) / (1 - 2 * eps) * (1 + c0 * r * sqrt(s / ta)) + c0 * s * sqrt(2 + 2 * log(1 / ta)), r


def t_approx(eps, n, rank, delta, gamma, opnorm):
    cg = (1 + gamma) / (1 - gamma)
    r = (sqrt(cg * rank) + sqrt(2 * log(2 / delta))) / sqrt(n)
    ta = tau(r)
    return opnorm / (1 - gamma) * ((3 - 2 * eps) / (1 - 2 * eps) * (1 + r / sqrt(ta)) + sqrt(2 + log(2 / ta))), r


def schedule(p):
    out = [p]
    while out[-1] > 1:
        x = mpf(out[-1]) / e
        out.append(int(ceil(x)) - 1 + 1)
    return out


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


show("base_rate(1000,60,0.1)", base_rate(1000, 60, mpf("0.1")))
show("tau(0.322352)", tau(mpf("0.322352")))
show("tau(base_rate(1000,60,0.1))", tau(base_rate(1000, 60, mpf("0.1"))))
show("t_gauss(0.1,1000,60,0.1)", t_gauss(mpf("0.1"), 1000, 60, mpf("0.1")))
show("t_gauss(0.4,10000,10,0.05)", t_gauss(mpf("0.4"), 10000, 10, mpf("0.05")))
show("t_gauss(0.25,1,9,0.1)", t_gauss(mpf("0.25"), 1, 9, mpf("0.1")))
show("tau(base_rate(1,9,0.1))", tau(base_rate(1, 9, mpf("0.1"))))
v, r = t_subg(mpf("0.1"), 1000, 60, mpf("0.1"), 1, sqrt(2))
show("t_subg(0.1,1000,60,0.1,s=1,c0=sqrt2)", v)
show("r_subg(1000,60,0.1,s=1)", r)
v, r = t_approx(mpf("0.2"), 2000, 30, mpf("0.1"), mpf("0.25"), 1)
show("t_approx(0.2,2000,30,0.1,g=0.25,op=1)", v)
show("r_approx", r)
v, r = t_approx(mpf("0.2"), 2000, 30, mpf("0.1"), mpf("0.25"), 2.5)
show("t_approx(...,op=2.5)", v)
print("schedule(60) =", schedule(60))
print("schedule(1000) =", schedule(1000))
print("2 ln 1000 =", mp.nstr(2 * log(1000), 10))
