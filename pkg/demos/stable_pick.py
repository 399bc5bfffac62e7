"""The Pick function F_theta(z) = -Gamma(theta+1) z^(1-theta): Theta-transform
of the stable exponent, and recovery of its measure by Stieltjes-Perron."""
import math

from pickforge import levy, nevanlinna, specfun


def main():
    for th in (1.25, 1.5, 1.75):
        F_int, triple = levy.theta_transform(0.0, levy.catalog("stable", theta=th))
        for z in (1 + 1j, 2j):
            want = -specfun.gamma_fn(th + 1) * z ** (1 - th)
            print(f"theta={th} z={z}: integral {F_int(z):.12f}  "
                  f"triple {nevanlinna.eval_pick(triple, z):.12f}  closed {want:.12f}")
    th = 1.5
    got = nevanlinna.stieltjes_perron(levy.stable_pick(th), (1.0, 2.0))
    want = 2 * levy.c_theta(th) * (math.sqrt(2) - 1)
    print(f"\nPerron mass on (1, 2] at theta=1.5: {got:.10f} (direct {want:.10f})")


if __name__ == "__main__":
    main()
