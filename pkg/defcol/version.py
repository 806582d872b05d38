from functools import lru_cache
from importlib import metadata
from pathlib import Path

VERSION_FILE = Path(__file__).resolve().parents[1] / "VERSION.txt"


@lru_cache(maxsize=None)
def get_version() -> str:
    """Installed distribution version, else VERSION.txt of a source checkout, else 'unknown'."""
    try:
        return metadata.version("defcol")
    except metadata.PackageNotFoundError:
        pass
    if VERSION_FILE.is_file():
        return VERSION_FILE.read_text(encoding="utf-8").strip() or "unknown"
    return "unknown"


def dependency_versions() -> dict:
    """Versions of the libraries the results depend on, for logs and report metadata."""
    versions = {}
    for name in ("networkx", "pandas", "pyyaml"):
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "missing"
    return versions
