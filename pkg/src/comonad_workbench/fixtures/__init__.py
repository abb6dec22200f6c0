"""Bundled ``.wb`` fixtures (regenerate with ``scripts/make_fixtures.py``)."""

from importlib.resources import files

NAMES = ("ground.wb", "kz2.wb", "kz2xz2.wb", "broken-counit.wb")


def fixture_path(name: str):
    return files(__name__) / name
