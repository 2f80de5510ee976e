"""Evaluate the naive slash-based Hecke sum for E at q = 3, p = t and show it is nonzero."""

from qmf import hecke as hk
from qmf.fields import RatFunc, get_field


def main():
    c = hk.naive_counterexample()
    t = RatFunc.T(get_field(3))
    den = (t + 1) * (t + 2) ** 2 * (t * t + t + 2) * (t * t + 2 * t + 2)
    print("value        :", f"({c.value}) * pi^-1")
    print("brute force  :", "agrees" if c.value == c.brute else "DISAGREES")
    print("denominator  :", den)
    print("numerator    :", c.numerator)
    print("cofactor     :", c.cofactor, f"(degree {c.cofactor.degree()})")
    print("shape t(t+2)*monic sextic:", c.shape_ok, " nonzero:", c.nonzero)
    for name, R in (("R", hk.counterexample_reps(get_field(3))),):
        print(f"{name}: " + "; ".join(str(g) for g in R))


if __name__ == "__main__":
    main()
