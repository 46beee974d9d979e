import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# Test modules import the local oracles helper directly.
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
