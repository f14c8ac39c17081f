"""Measures on advice spaces, samplers, the fat Cantor set, and the Monte-Carlo harness."""
