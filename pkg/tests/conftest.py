"""Shared pytest plumbing: a per-criterion summary for the acceptance file.

Each ``test_cNN_*`` function in ``test_acceptance.py`` checks one release
criterion; this hook prints one PASS/FAIL line per criterion after the
run so the gate can be read at a glance.
"""

import re

_LABELS = {
    "c01": "tropic scaling ratios and spacings",
    "c02": "circle preservation (stereographic) vs conic image (gnomonic)",
    "c03": "analytic almucantars match pointwise-projected fits",
    "c04": "azimuth circles pass through zenith and nadir",
    "c05": "hour arcs hit their division points; equal equator chords",
    "c06": "150 mm instrument error example (band misassignment)",
    "c07": "meridian declination identity",
    "c08": "qibla bearing oracle and closed-form divergence",
    "c09": "calendar ring spacing and solar events",
    "c10": "Monte Carlo zero case and determinism",
    "c11": "SVG golden run: byte identity and layer groups",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_(c\d{2})_")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _PATTERN.search(report.nodeid)
            if match:
                key = match.group(1)
                verdict = "PASS" if outcome == "passed" else "FAIL"
                if results.get(key) != "FAIL":
                    results[key] = verdict
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(results):
        label = _LABELS.get(key, key)
        terminalreporter.write_line(f"criterion {int(key[1:]):2d} ({label}): {results[key]}")
