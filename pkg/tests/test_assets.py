"""Generator asset files: format round-trip, manifest, tamper detection."""

import json

import pytest

from grpfact import assets
from grpfact.constructors import classical_generators, ext_subgroup


def test_element_text_roundtrip():
    g = ext_subgroup("SL", 2, 2, 2, "psi").generators[-1]
    text = assets.element_to_text(g)
    lines = text.splitlines()
    assert lines[0] == "4 2 0 0"
    back = assets.element_from_text(text)
    assert back == g


def test_group_roundtrip_with_manifest(tmp_path):
    G = classical_generators("SL", 3, 2)
    assets.save_group(G, tmp_path)
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert len(manifest) == 1
    loaded = assets.load_group(tmp_path, G.name)
    assert loaded.order() == 168
    assert loaded.generators == G.generators


def test_tampered_asset_rejected(tmp_path):
    G = classical_generators("SL", 2, 4)
    path = assets.save_group(G, tmp_path)
    payload = path.read_text().replace("2 4 0 0", "2 4 1 0", 1)
    path.write_text(payload)
    with pytest.raises(assets.AssetError):
        assets.load_group(tmp_path, G.name)


def test_wrong_order_claim_fails_certification(tmp_path):
    G = classical_generators("SL", 2, 2)
    assets.save_group(G, tmp_path)
    manifest_path = tmp_path / "manifest.json"
    manifest = json.loads(manifest_path.read_text())
    key = next(iter(manifest))
    manifest[key]["claimed_order"] = "7"
    manifest_path.write_text(json.dumps(manifest))
    from grpfact.grpcore import CertificationError

    with pytest.raises(CertificationError):
        assets.load_group(tmp_path, G.name)


def test_malformed_rows_rejected():
    with pytest.raises(assets.AssetError):
        assets.element_from_text("2 2 0 0\n1 0\n0")
    with pytest.raises(assets.AssetError):
        assets.element_from_text("2 2 0 0\n1 5\n0 1")
