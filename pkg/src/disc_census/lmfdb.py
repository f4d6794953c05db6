"""Number field lookups against the public LMFDB API, with offline fixtures."""

from __future__ import annotations

import json
import os
import re
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import intarith
from .errors import FixtureMissing, InvalidInput, NetworkFailure
from .poly_core import MonicIntPoly, discriminant

API_URL = "https://www.lmfdb.org/api/nf_fields/"
CACHE_ENV = "DISC_CENSUS_CACHE"
LABEL_RE = re.compile(r"^([1-9]\d*)\.(\d+)\.([1-9]\d*)\.([1-9]\d*)$")


@dataclass(frozen=True)
class FieldRecord:
    label: str
    degree: int
    r2: int
    disc_abs: int
    disc_sign: int
    source: str  # "network", "cache" or "fixture"

    @property
    def disc(self) -> int:
        return self.disc_sign * self.disc_abs


def parse_label(label: str) -> tuple[int, int, int, int]:
    """``degree.r2.|disc|.index`` with ``2 r2 <= degree``."""
    m = LABEL_RE.match(label)
    if not m:
        raise InvalidInput(f"malformed number field label {label!r}")
    degree, r2, disc_abs, index = map(int, m.groups())
    if 2 * r2 > degree:
        raise InvalidInput(f"label {label!r} has r2 > degree/2")
    return degree, r2, disc_abs, index


def _record(raw: dict, source: str) -> FieldRecord:
    try:
        return FieldRecord(raw["label"], int(raw["degree"]), int(raw["r2"]), int(raw["disc_abs"]),
                           int(raw["disc_sign"]), source)
    except (KeyError, TypeError, ValueError) as exc:
        raise NetworkFailure(f"unexpected record layout: {exc}") from exc


def _fixtures() -> dict:
    return json.loads(resources.files("disc_census").joinpath("data/lmfdb_fixtures.json").read_text())


def _cache_dir(cache_dir: str | None) -> Path | None:
    path = cache_dir or os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def _fetch(label: str, timeout: float) -> dict:
    query = urllib.parse.urlencode({"label": label, "_format": "json"})
    try:
        with urllib.request.urlopen(f"{API_URL}?{query}", timeout=timeout) as resp:
            payload = json.load(resp)
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise NetworkFailure(f"LMFDB request failed: {exc}") from exc
    data = payload.get("data") if isinstance(payload, dict) else None
    if not data:
        raise InvalidInput(f"LMFDB has no field labelled {label}")
    return data[0]


def lookup(label: str, offline: bool = False, cache_dir: str | None = None, timeout: float = 20.0) -> FieldRecord:
    """Fetch a field record. Offline mode reads the cache, then the bundled fixtures."""
    degree, _, disc_abs, _ = parse_label(label)
    cache = _cache_dir(cache_dir)
    cached = cache / f"{label}.json" if cache else None
    if cached is not None and cached.exists():
        rec = _record(json.loads(cached.read_text()), "cache")
    elif offline:
        fixtures = _fixtures()
        if label not in fixtures:
            raise FixtureMissing(f"no cached or bundled record for {label}")
        rec = _record(fixtures[label], "fixture")
    else:
        raw = _fetch(label, timeout)
        rec = _record(raw, "network")
        if cached is not None:
            cache.mkdir(parents=True, exist_ok=True)
            cached.write_text(json.dumps({k: raw[k] for k in ("label", "degree", "r2", "disc_abs", "disc_sign")},
                                         sort_keys=True))
    if (rec.degree, rec.disc_abs) != (degree, disc_abs):
        raise NetworkFailure(f"record for {label} disagrees with its own label")
    return rec


def compare_with_polynomial(rec: FieldRecord, f: MonicIntPoly) -> dict:
    """Whether ``Disc(f) / Delta`` is a rational square, as it must be when f
    generates the field. A sign mismatch already rules this out."""
    disc = discriminant(f)
    quotient, rem = divmod(disc, rec.disc)
    square = rem == 0 and intarith.is_perfect_square(quotient)[0]
    return {
        "poly_disc": disc,
        "field_disc": rec.disc,
        "same_degree": f.degree == rec.degree,
        "divides": rem == 0,
        "quotient_is_square": square,
    }
