import hashlib
from pathlib import Path

from quiver.core import GaugeTheory, parse_theory
from utilities.errors import TheoryValidationError


def read_text(path) -> str:
    """
    Reads a UTF-8 text file.

    Args:
        path: location of the file.

    Returns:
        str: the decoded contents.
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise TheoryValidationError("unreadable-file", f"cannot read {path}: {e}")


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def read_theory_file(path) -> tuple[GaugeTheory, str]:
    """
    Parses a theory document from disk.

    Args:
        path: location of the JSON theory document.

    Returns:
        tuple: the validated theory and the SHA-256 digest of the file text.
    """
    text = read_text(path)
    return parse_theory(text), digest(text)
