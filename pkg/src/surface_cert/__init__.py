"""Certificate engine for surface complements in simply connected 4-manifolds."""
