"""Named constants shared across the library."""

import math

# Largest radius for which a geodesic sphere exists.
MAX_BALL_RADIUS = 2.0 * math.pi

# Balls are convex in the model exactly up to pi/2, and their sheared
# images stay convex up to pi.
BALL_CONVEXITY_MAX_RADIUS = 0.5 * math.pi
M_IMAGE_CONVEXITY_MAX_RADIUS = math.pi

# Least density of a lattice ball covering of Euclidean 3-space
# (body-centered cubic), for comparison: 5*sqrt(5)*pi/24.
EUCLIDEAN_OPTIMAL_COVERING_DENSITY = 5.0 * math.sqrt(5.0) * math.pi / 24.0
