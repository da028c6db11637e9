"""Shared test configuration.

Registers a deterministic hypothesis profile so property tests are
reproducible across runs and machines.
"""

from hypothesis import settings

settings.register_profile("deterministic", derandomize=True, max_examples=200)
settings.load_profile("deterministic")
