"""Generator asset files.

Element format (text): a header line ``n q fa dual`` followed by n rows of
n integer-encoded field elements (the base-p polynomial packing documented
in the field module).  A group file concatenates elements separated by
blank lines.  A JSON manifest next to the files records provenance,
claimed orders and sha256 digests; loading verifies the digest and the
claimed order is re-certified by the usual chain build when requested.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .constructors import _split_prime_power
from .gf import make_field
from .grpcore import GroupSpec
from .linalg import GroupElement, Mat


class AssetError(ValueError):
    pass


def element_to_text(g: GroupElement) -> str:
    lines = [f"{g.n} {g.spec.q} {g.fa} {g.dual}"]
    for row in g.mat.a:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines)


def element_from_text(block: str) -> GroupElement:
    lines = [ln for ln in block.strip().splitlines() if ln.strip()]
    n, q, fa, dual = (int(t) for t in lines[0].split())
    p, f = _split_prime_power(q)
    spec = make_field(p, f)
    if len(lines) != n + 1:
        raise AssetError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [int(t) for t in ln.split()]
        if len(row) != n or any(not 0 <= x < q for x in row):
            raise AssetError("malformed matrix row")
        rows.append(row)
    return GroupElement(Mat(spec, np.array(rows, dtype=np.int64)), fa, dual)


def group_to_text(group: GroupSpec) -> str:
    return "\n\n".join(element_to_text(g) for g in group.generators) + "\n"


def save_group(group: GroupSpec, directory, manifest_name: str = "manifest.json") -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    fname = f"{_slug(group.name)}.gens"
    payload = group_to_text(group)
    path = directory / fname
    path.write_text(payload)
    manifest_path = directory / manifest_name
    manifest = json.loads(manifest_path.read_text()) if manifest_path.exists() else {}
    manifest[fname] = {
        "sha256": hashlib.sha256(payload.encode()).hexdigest(),
        "name": group.name,
        "n": group.n,
        "q": group.spec.q,
        "claimed_order": str(group.claimed_order) if group.claimed_order else None,
        "provenance": group.provenance,
        "action": group.action_tag,
    }
    manifest_path.write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    return path


def load_group(directory, name: str, manifest_name: str = "manifest.json",
               certify: bool = True) -> GroupSpec:
    directory = Path(directory)
    manifest = json.loads((directory / manifest_name).read_text())
    fname = f"{_slug(name)}.gens"
    if fname not in manifest:
        raise AssetError(f"{name!r} not in the asset manifest")
    entry = manifest[fname]
    payload = (directory / fname).read_text()
    digest = hashlib.sha256(payload.encode()).hexdigest()
    if digest != entry["sha256"]:
        raise AssetError(f"asset {fname} digest mismatch")
    gens = [element_from_text(block) for block in payload.split("\n\n") if block.strip()]
    group = GroupSpec(
        entry["name"],
        entry["n"],
        gens[0].spec,
        gens,
        claimed_order=int(entry["claimed_order"]) if entry["claimed_order"] else None,
        provenance=f"asset file {fname}: {entry['provenance']}",
        action_tag=entry.get("action"),
    )
    if certify and group.claimed_order is not None:
        group.order()  # chain build certifies the claimed order
    return group


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name)
