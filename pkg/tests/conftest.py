import functools
import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def generated(map_name: str, resolution: int, ulac_length: int = 12):
    """Harness inputs, generated once per session."""
    from boundext.algorithms import AlgorithmInputs
    from boundext.harness import (
        GroundTruth,
        generate_boundary_approx,
        generate_phi_approx,
        generate_ulac,
        parse_map_name,
    )

    gt = GroundTruth(parse_map_name(map_name), resolution)
    return gt, AlgorithmInputs(generate_phi_approx(gt), generate_boundary_approx(gt), generate_ulac(gt, ulac_length))


def pytest_configure(config):
    # the whole run executes under the float tripwire (see tripwire.py)
    import tripwire

    if os.environ.get("BOUNDEXT_TRIPWIRE", "1") != "0":
        tripwire.install()


def pytest_terminal_summary(terminalreporter):
    import sys

    import tripwire

    acc = sys.modules.get("test_acceptance")
    lines = getattr(acc, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
    terminalreporter.write_line(f"float tripwire hits during this run: {len(tripwire.hits())}")
