import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# Exact-arithmetic cases can be individually slow; cap example counts rather
# than wall-clock time per example.
settings.register_profile(
    "exact",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

sys.path.insert(0, str(Path(__file__).resolve().parent))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
