"""Finite set-theoretic solutions of the Yang-Baxter equation."""
