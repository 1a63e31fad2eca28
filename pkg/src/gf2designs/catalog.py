"""Bundled catalog of GL(7,2) subgroups and their recorded search outcomes.

The package ships a small data directory: one ``.grp`` file per group with
its generators, a tab-separated table of expected orbit signatures and
verdicts, and a sha256 manifest covering both.
"""

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .gf2 import GF2Matrix
from .orbits import MatrixGroup, group_closure

DATA_DIR = Path(__file__).resolve().parent / "data"
GROUP_DIR = DATA_DIR / "groups"
TABLE_PATH = DATA_DIR / "table1.tsv"
MANIFEST_PATH = DATA_DIR / "MANIFEST.sha256"

VERDICT_CLASSES = ("zero-row", "orbit-sum", "solved-unsat", "open")


class UnknownGroupError(KeyError):
    """Requested name does not appear in the bundled catalog."""


class CatalogFormatError(ValueError):
    """A bundled data file is malformed or fails an integrity check."""


def parse_matrix(lines, dim=None):
    """Parse rows of '0'/'1' characters into a GF2Matrix.

    Each line is one row, first coordinate first.  All rows must have the
    same length; `dim`, when given, pins that length.
    """
    rows = [line.strip() for line in lines]
    if not rows:
        raise CatalogFormatError("empty matrix")
    if dim is None:
        dim = len(rows[0])
    if len(rows) != dim:
        raise CatalogFormatError(f"expected {dim} rows, got {len(rows)}")
    bit_rows = []
    for line in rows:
        if len(line) != dim:
            raise CatalogFormatError(f"row {line!r} is not {dim} characters")
        if set(line) - {"0", "1"}:
            raise CatalogFormatError(f"row {line!r} has characters outside 0/1")
        bit_rows.append(int(line[::-1], 2))
    return GF2Matrix.from_bit_rows(bit_rows, dim)


def format_matrix(m):
    """Render a GF2Matrix in the same row-per-line text form parse_matrix reads."""
    lines = []
    for row in m.rows:
        lines.append("".join("1" if (row >> j) & 1 else "0" for j in range(m.dim)))
    return "\n".join(lines)


@dataclass(frozen=True)
class TableRow:
    """Expected outcome for one catalog group."""

    name: str
    order: int
    iso_type: str
    t_signature: str
    k_signature: str
    reduced_signature: str
    n_rows: int
    n_cols: int
    verdict_class: str
    runtime: str

    def verdict_label(self):
        """Human-readable verdict, with the recorded runtime for solved cases."""
        if self.verdict_class == "solved-unsat":
            return f"solved-unsat, {self.runtime}"
        return self.verdict_class


@dataclass(frozen=True)
class GroupSpec:
    """One catalog group: generators plus declared order and isomorphism type."""

    name: str
    order: int
    iso_type: str
    generators: tuple

    @property
    def dim(self):
        return self.generators[0].dim

    def closure(self, verify=True):
        """Generate the full group.  With verify=True (default), check that
        the closure order matches the declared order."""
        group = group_closure(self.generators, name=self.name)
        if verify and group.order != self.order:
            raise CatalogFormatError(
                f"{self.name}: closure has order {group.order}, expected {self.order}"
            )
        return group


def file_stem(name):
    """Filesystem-safe stem for a group name: G_{4,1} becomes G_4_1."""
    return name.replace("{", "").replace("}", "").replace(",", "_")


def parse_group_file(text):
    """Parse a .grp file into a GroupSpec.

    Format: 'group <name>', 'order <n>', 'type <label>', then one 'gen'
    keyword before each generator's rows.  Blank lines and '#' comments
    are ignored.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    if len(lines) < 3:
        raise CatalogFormatError("group file is missing its header")

    def header(idx, key):
        parts = lines[idx].split(None, 1)
        if len(parts) != 2 or parts[0] != key:
            raise CatalogFormatError(f"expected '{key} <value>', got {lines[idx]!r}")
        return parts[1]

    name = header(0, "group")
    try:
        order = int(header(1, "order"))
    except ValueError as exc:
        raise CatalogFormatError(f"order is not an integer: {lines[1]!r}") from exc
    if order < 1:
        raise CatalogFormatError(f"order must be positive, got {order}")
    iso_type = header(2, "type")

    generators = []
    i = 3
    dim = None
    while i < len(lines):
        if lines[i] != "gen":
            raise CatalogFormatError(f"expected 'gen', got {lines[i]!r}")
        i += 1
        if dim is None:
            if i >= len(lines):
                raise CatalogFormatError("gen keyword with no matrix rows")
            dim = len(lines[i])
        if i + dim > len(lines):
            raise CatalogFormatError(f"generator needs {dim} rows, file ends early")
        generators.append(parse_matrix(lines[i : i + dim], dim))
        i += dim
    if not generators:
        raise CatalogFormatError("group file declares no generators")
    return GroupSpec(name=name, order=order, iso_type=iso_type, generators=tuple(generators))


@lru_cache(maxsize=1)
def load_table():
    """All expectation rows, in catalog order."""
    try:
        text = TABLE_PATH.read_text()
    except FileNotFoundError as exc:
        raise CatalogFormatError(f"missing table file {TABLE_PATH}") from exc
    lines = text.splitlines()
    if not lines:
        raise CatalogFormatError("expectation table is empty")
    header = lines[0].split("\t")
    expected = [
        "name", "order", "type", "t_signature", "k_signature",
        "reduced_signature", "rows", "cols", "verdict", "runtime",
    ]
    if header != expected:
        raise CatalogFormatError(f"unexpected table header {header!r}")
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(expected):
            raise CatalogFormatError(f"table line {lineno}: expected {len(expected)} cells")
        name, order, iso_type, t_sig, k_sig, red_sig, n_rows, n_cols, verdict, runtime = cells
        if verdict not in VERDICT_CLASSES:
            raise CatalogFormatError(f"table line {lineno}: unknown verdict {verdict!r}")
        out.append(
            TableRow(
                name=name,
                order=int(order),
                iso_type=iso_type,
                t_signature=t_sig,
                k_signature=k_sig,
                reduced_signature=red_sig,
                n_rows=int(n_rows),
                n_cols=int(n_cols),
                verdict_class=verdict,
                runtime=runtime,
            )
        )
    return tuple(out)


def catalog_names():
    """Group names in catalog order."""
    return [row.name for row in load_table()]


def table_row(name):
    """Expectation row for one group."""
    resolved = _resolve_name(name)
    for row in load_table():
        if row.name == resolved:
            return row
    raise UnknownGroupError(name)


def _resolve_name(name):
    """Accept either the display name (G_{4,1}) or the file stem (G_4_1)."""
    by_stem = {file_stem(n): n for n in catalog_names()}
    if name in by_stem.values():
        return name
    if name in by_stem:
        return by_stem[name]
    raise UnknownGroupError(name)


@lru_cache(maxsize=None)
def load_group(name):
    """Load a catalog group by name.  Raises UnknownGroupError for names
    outside the catalog and CatalogFormatError if the file disagrees with
    the expectation table."""
    resolved = _resolve_name(name)
    path = GROUP_DIR / f"{file_stem(resolved)}.grp"
    try:
        text = path.read_text()
    except FileNotFoundError as exc:
        raise CatalogFormatError(f"catalog lists {resolved} but {path} is missing") from exc
    spec = parse_group_file(text)
    row = table_row(resolved)
    if spec.name != resolved:
        raise CatalogFormatError(f"{path} declares name {spec.name!r}, expected {resolved!r}")
    if spec.order != row.order or spec.iso_type != row.iso_type:
        raise CatalogFormatError(f"{path} header disagrees with the expectation table")
    return spec


def load_all_groups():
    """All catalog groups, in catalog order."""
    return [load_group(name) for name in catalog_names()]


def list_groups():
    """Summary tuples (name, order, iso_type, verdict_label) in catalog order."""
    return [(row.name, row.order, row.iso_type, row.verdict_label()) for row in load_table()]


def verify_manifest():
    """Check every data file against MANIFEST.sha256.

    Returns the number of files verified; raises CatalogFormatError on a
    missing file or digest mismatch.
    """
    try:
        text = MANIFEST_PATH.read_text()
    except FileNotFoundError as exc:
        raise CatalogFormatError(f"missing manifest {MANIFEST_PATH}") from exc
    checked = 0
    listed = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CatalogFormatError(f"manifest line {lineno}: expected '<sha256>  <path>'")
        digest, rel = parts
        listed.add(rel)
        path = DATA_DIR / rel
        if not path.is_file():
            raise CatalogFormatError(f"manifest lists {rel} but the file is missing")
        actual = hashlib.sha256(path.read_bytes()).hexdigest()
        if actual != digest:
            raise CatalogFormatError(f"{rel}: sha256 mismatch")
        checked += 1
    for path in DATA_DIR.rglob("*"):
        if path.is_file() and path.name != MANIFEST_PATH.name:
            rel = path.relative_to(DATA_DIR).as_posix()
            if rel not in listed:
                raise CatalogFormatError(f"{rel} is not covered by the manifest")
    return checked
