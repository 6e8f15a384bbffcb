"""Three-way comparison at a few exponents: closed form, master theorem, quadrature.

Also checks each catalog phi against its own series near x = 0.
"""
import math

from rmtlab.phi import catalog_lookup, catalog_names
from rmtlab.quad import mellin_quad
from rmtlab.rmt import rmt_generalized
from rmtlab.series import series_consistency_check

SIGMAS = (0.25, 0.5, 0.75, 1.25, 1.75, 2.5, 3.5)


def main():
    print(f"{'entry':<12} {'sigma':>6} {'closed form':>22} {'master thm':>10} {'quadrature':>10}")
    for name in catalog_names():
        entry = catalog_lookup(name)
        lo, hi = entry.nu_validity
        tol = 1e-6 if entry.oscillatory else 1e-10
        for sigma in (s for s in SIGMAS if lo < s < hi):
            want = entry.expected(sigma)
            thm = rmt_generalized(entry.phi, entry.m, 1.0, sigma, strip=entry.nu_validity).value
            q = mellin_quad(entry.f_direct, sigma, 1.0, tol, entry.oscillatory, entry.period_hint)
            print(
                f"{name:<12} {sigma:>6.2f} {want:>22.16g} "
                f"{abs(thm - want) / abs(want):>10.1e} {abs(q.value - want) / abs(want):>10.1e}"
            )

    print()
    for name in catalog_names():
        entry = catalog_lookup(name)
        radius = entry.series_radius
        top = 0.5 * radius if math.isfinite(radius) else 2.0
        grid = [top * i / 4 for i in range(5)]
        worst = max(r.rel_diff for r in series_consistency_check(entry, grid))
        print(f"series vs f_direct  {name:<12} x in [0, {top:g}]  max rel diff {worst:.1e}")


if __name__ == "__main__":
    main()
