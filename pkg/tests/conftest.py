"""Shared pytest configuration.

Hypothesis deadlines are disabled: exact rational elimination has heavy
tails on adversarial examples and the suite enforces its own time budget
at the test level.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")
