"""Combinatorics of G-zip strata and partial Hasse invariants."""
