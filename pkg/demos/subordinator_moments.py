"""Negative moments of stable and Lambert subordinators, and the
inverse-time classification of t -> t E[xi_t^-p]."""
import math

from pickforge import subordinator as S
from pickforge.errors import DivergentMoment


def main():
    for alpha in (0.3, 0.5, 0.8):
        sp = S.stable_spec(alpha)
        for p in (0.5, 1.0, 2.0):
            num = S.negative_moment(sp, (p, 1.0))
            ref = math.gamma(1 + p / alpha) / math.gamma(1 + p)
            print(f"stable alpha={alpha} p={p}: {num:.15g}  rel err {abs(num / ref - 1):.1e}")

    lam = S.lambert_spec()
    for p, t in ((0.5, 2.0), (1.0, 5.0), (1.0, 1.0)):
        try:
            print(f"lambert p={p} t={t}: {S.negative_moment(lam, (p, t)):.15g}")
        except DivergentMoment as exc:
            print(f"lambert p={p} t={t}: diverges ({exc})")

    print()
    for sp, p in ((S.stable_spec(0.5), 1.0), (S.stable_spec(2 / 3), 4 / 3),
                  (S.stable_spec(0.5), 3.0), (lam, 1.0)):
        rep = S.classify_inverse_time(sp, p)
        print(f"{sp.name:8s} {sp.params} p={p:.4g}: {rep.verdict} "
              f"({rep.certificate}) {rep.note}")


if __name__ == "__main__":
    main()
