"""Where noise ends: the eigenvalue band of a pure-noise return panel.

A panel of completely independent returns still yields a correlation
matrix full of apparent structure. The analytic band for Q = T/N bounds
the eigenvalues that structure can reach on its own; anything beyond the
upper edge is a candidate for real signal. This script draws one such
panel, prints the eigenvalue histogram as text bars next to the analytic
expectation per bin, and counts the strays.

Run: python3 demos/01_noise_band.py
"""

import numpy as np

from eigensectors import (
    MarketSpec,
    correlation_matrix,
    eigendecompose,
    generate,
    mp_bounds,
    mp_density,
    significant_eigenvalues,
)

N, T, SEED = 100, 1000, 0


def main():
    nr, _ = generate(
        MarketSpec(n_assets=N, n_observations=T, market_strength=0.0), seed=SEED
    )
    spec = eigendecompose(correlation_matrix(nr))
    q = T / N
    law = mp_bounds(q)
    w = spec.eigenvalues

    print(f"pure-noise panel: N={N}  T={T}  Q={q:.1f}")
    print(f"analytic band: [{law.lambda_min:.4f}, {law.lambda_max:.4f}]")
    print()

    lo = min(law.lambda_min, float(w.min())) - 0.05
    hi = max(law.lambda_max, float(w.max())) + 0.05
    edges = np.linspace(lo, hi, 25)
    counts, _ = np.histogram(w, edges)
    centers = 0.5 * (edges[:-1] + edges[1:])
    expected = N * mp_density(centers, q) * (edges[1] - edges[0])
    peak = max(counts.max(), expected.max())
    for c, seen, exp in zip(centers, counts, expected):
        bar = "#" * round(40 * seen / peak)
        note = "" if law.lambda_min <= c <= law.lambda_max else "  <- outside"
        print(f"  {c:5.2f} |{bar:<40s}| seen {seen:3d}  expected {exp:5.1f}{note}")

    outside = int(((w < law.lambda_min) | (w > law.lambda_max)).sum())
    print()
    print(f"eigenvalues outside the band: {outside} of {N}")
    sig = significant_eigenvalues(spec)
    flagged = list(sig.indices) if sig.indices else "none"
    print(f"modes flagged as significant at margin 1.0: {flagged}")


if __name__ == "__main__":
    main()
