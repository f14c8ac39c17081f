"""Represented spaces: reals, hyperspaces, dense sequences."""
