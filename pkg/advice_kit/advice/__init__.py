"""Advice schemes, advice sets, machines with advice, and their combinators."""
