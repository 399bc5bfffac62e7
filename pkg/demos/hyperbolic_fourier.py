"""Closed-form Fourier transforms of the hyperbolic Nevanlinna densities
against direct oscillatory quadrature, plus the Fourier inversion check."""
from pickforge import hyperbolic as H
from pickforge import nevanlinna


def main():
    print(f"{'model':>5} {'s':>6} {'closed':>22} {'|closed - quad|':>16}")
    for kind in H.KINDS:
        for s in (0.25, 1.0, 4.0):
            c = H.fourier_rho_closed(kind, s)
            q = H.fourier_rho_integral(kind, s)
            print(f"{kind:>5} {s:6.2f} {c:22.17f} {abs(c - q):16.3e}")
    print()
    for kind in H.KINDS:
        m = H.model(kind)
        F = m.pick()
        errs = [abs(nevanlinna.jj_lhs(F, w) - nevanlinna.jj_rhs(m.measure(), F(1j), w))
                for w in (1.5, 2.0, 3.0, 5.0)]
        print(f"inversion {kind:>2}: max error {max(errs):.2e}, mass {H.MASSES[kind]:.15f}")


if __name__ == "__main__":
    main()
