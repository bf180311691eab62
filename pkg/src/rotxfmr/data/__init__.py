"""Bundled design configs and published reference tables."""

from importlib import resources

CONFIGS = {"small-size": "small_size.json", "large-size": "large_size.json"}


def data_path(name):
    """Filesystem path of a bundled data file."""
    return resources.files(__name__).joinpath(name)
