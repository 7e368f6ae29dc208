"""Scan the curvature of the rescaled Kepler plane across energies and show
how its sign sorts orbits into ellipse / parabola / hyperbola.
"""

import numpy as np

from jacobiflow import (
    TurningPoint,
    classify_eccentricity,
    classify_orbit,
    gaussian_curvature_numeric,
    kepler_curvature,
    kepler_eccentricity,
    kepler_profile,
)

K_COUPLING = 1.0
ENERGIES = (-0.5, -0.1, 0.0, 0.1, 0.5)
RADII = np.linspace(0.5, 5.0, 10)

print("curvature of the rescaled plane, k = %g" % K_COUPLING)
print()
for E in ENERGIES:
    prof = kepler_profile(K_COUPLING, E)
    values = []
    for r in RADII:
        try:
            kn = gaussian_curvature_numeric(prof, r)
        except TurningPoint:
            continue
        values.append((r, kn))
    regime = classify_orbit(E)
    if values:
        r_mid, k_mid = values[len(values) // 2]
        closed = kepler_curvature(K_COUPLING, E, r_mid)
        print("E=%5.2f  %-9s  K(r=%.2f): numeric %+.6e  closed %+.6e"
              % (E, regime, r_mid, k_mid, closed))
    else:
        print("E=%5.2f  %-9s  (no valid radius in the window)" % (E, regime))

print()
print("the same regimes through the two-body eccentricity oracle (L = 1):")
for E in ENERGIES:
    e = kepler_eccentricity(E, 1.0, m=1.0, k=K_COUPLING)
    print("E=%5.2f -> e = %.6f -> %s" % (E, e, classify_eccentricity(e)))

print()
print("near the boundary of a bound chart the curvature blows up:")
prof = kepler_profile(K_COUPLING, -0.5)  # chart ends at r = 2
for r in (1.5, 1.8, 1.95, 1.99):
    print("  r=%.2f  K = %+.4e" % (r, gaussian_curvature_numeric(prof, r)))
