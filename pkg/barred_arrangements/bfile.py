"""
OEIS b-files: "n a(n)" per line, '#' starts a comment.
"""
import logging
import re
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from django.conf import settings

from .exceptions import BFileError, FetchError
from .params import Params

logger = logging.getLogger(__name__)

SEQUENCE_ID = re.compile(r"^A(\d{6})$")

# Sequences bundled under fixtures/bfiles with the point they reproduce.
FIXTURES: dict[str, Params] = {
    'A000670': Params(1, 1, 0),
    'A007047': Params(1, 1, 2),
    'A216794': Params(1, 2, 0),
}


@dataclass(frozen=True)
class BFile:
    entries: tuple[tuple[int, int], ...]
    source: str = ''

    def __post_init__(self):
        entries = tuple((int(n), int(v)) for n, v in self.entries)
        for (a, _), (b, _) in zip(entries, entries[1:]):
            if b <= a:
                raise BFileError(f"Indices must increase strictly: {a} then {b} in {self.source or 'b-file'}")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def from_values(cls, values: Iterable[int], offset: int = 0, source: str = '') -> "BFile":
        return cls(tuple(enumerate(values, start=offset)), source)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class BFileComparison:
    source: str
    compared: int
    first_mismatch: tuple[int, int, int] | None  # (n, b-file value, computed value)

    @property
    def matched(self) -> bool:
        return self.first_mismatch is None and self.compared > 0


def normalize_sequence_id(sequence_id: str) -> str:
    text = sequence_id.strip().upper()
    if text.isdigit():
        text = f"A{int(text):06d}"
    if not SEQUENCE_ID.match(text):
        raise BFileError(f"Invalid sequence id {sequence_id!r}; expected e.g. A000670")
    return text


def parse_bfile(text: str, source: str = '') -> BFile:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileError(f"{source or 'b-file'} line {lineno}: expected 'n a(n)', got {raw!r}")
        try:
            entries.append((int(fields[0]), int(fields[1])))
        except ValueError as e:
            raise BFileError(f"{source or 'b-file'} line {lineno}: not an integer pair: {raw!r}") from e
    return BFile(tuple(entries), source)


def write_bfile(bfile: BFile, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{n} {value}" for n, value in bfile.entries]
    return '\n'.join(lines) + '\n'


def read_bfile(path: Path | str) -> BFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise BFileError(f"Cannot read b-file {path}: {e}") from e
    return parse_bfile(text, str(path))


def fixture_path(sequence_id: str) -> Path:
    sequence_id = normalize_sequence_id(sequence_id)
    return Path(settings.BPA_FIXTURE_DIR) / f"b{sequence_id[1:]}.txt"


def load_fixture(sequence_id: str) -> BFile:
    sequence_id = normalize_sequence_id(sequence_id)
    path = fixture_path(sequence_id)
    if not path.exists():
        raise BFileError(f"No bundled b-file for {sequence_id}")
    return read_bfile(path)


def fetch_bfile(sequence_id: str, base_url: str | None = None, timeout: int | None = None) -> BFile:
    """Download b{digits}.txt for a sequence from the configured OEIS server."""
    sequence_id = normalize_sequence_id(sequence_id)
    base_url = settings.BPA_OEIS_BASE_URL if base_url is None else base_url
    if not base_url:
        raise FetchError("Fetching is disabled: set BPA_OEIS_BASE_URL to an OEIS server")
    url = f"{base_url.rstrip('/')}/{sequence_id}/b{sequence_id[1:]}.txt"
    logger.info("Fetching %s", url)
    try:
        with urllib.request.urlopen(url, timeout=timeout or settings.BPA_FETCH_TIMEOUT) as response:
            text = response.read().decode('utf-8')
    except (urllib.error.URLError, TimeoutError, UnicodeDecodeError) as e:
        raise FetchError(f"Could not fetch {url}: {e}") from e
    return parse_bfile(text, url)


def compare_bfile(bfile: BFile, values: Iterable[int], offset: int = 0) -> BFileComparison:
    """Compare the b-file against computed a(offset), a(offset+1), ..."""
    computed = dict(enumerate(values, start=offset))
    compared = 0
    for n, expected in bfile.entries:
        if n not in computed:
            continue
        compared += 1
        if computed[n] != expected:
            logger.warning("b-file %s differs at n=%s: %s != %s", bfile.source, n, expected, computed[n])
            return BFileComparison(bfile.source, compared, (n, expected, computed[n]))
    return BFileComparison(bfile.source, compared, None)
