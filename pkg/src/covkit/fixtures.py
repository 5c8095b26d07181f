"""Bundled fixture groups (JSON files under ``covkit/data``)."""
from importlib import resources

from .group_rep import load_group

FIXTURES = (
    "c2_sign",
    "c2_trivial",
    "s2_trivial",
    "s2_sign",
    "c2xc2_standard",
    "s3_trivial",
    "s3_sign",
)


def fixture_path(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    return str(resources.files("covkit") / "data" / f"{name}.json")


def load_fixture(name: str):
    return load_group(fixture_path(name))
