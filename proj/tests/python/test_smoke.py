# Copyright 2026 the voranon authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
import pathlib
import subprocess
import xml.etree.ElementTree as ET

import pytest

voranon = pytest.importorskip("voranon")

REPO_ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = REPO_ROOT / "data"


def write_inputs(tmp_path):
    schema = tmp_path / "schema.json"
    schema.write_text(
        json.dumps(
            {
                "geographic_attribute": "area",
                "attributes": [
                    {"name": "color", "domain": ["red", "blue", "green"]},
                    {"name": "size", "domain": ["s", "m", "l"]},
                ],
            }
        )
    )
    templates = tmp_path / "templates.csv"
    rows = ["region_id,x,y,stratum"]
    for i in range(40):
        rows.append(f"da{i},{(i % 8) * 3.0},{(i // 8) * 2.5},core")
    templates.write_text("\n".join(rows) + "\n")
    dist = tmp_path / "dist.json"
    dist.write_text(
        json.dumps(
            {"strata": {"core": {"color": [0.5, 0.3, 0.2], "size": [0.25, 0.5, 0.25]}}}
        )
    )
    return schema, templates, dist


def test_version_and_exports():
    assert voranon.__version__
    assert callable(voranon.run_pipeline)


def test_cutoff_presets_and_entropy():
    for name, expected in [("western", 1588.0), ("central", 1436.0), ("eastern", 1978.0)]:
        model = voranon.GapsModel.preset(name)
        assert voranon.gaps_cutoff(1.0, model) == pytest.approx(expected, abs=1e-9)

    table = voranon.ClassTable()
    table.add(("a",), 2)
    table.add(("b",), 2)
    assert voranon.dataset_entropy(table) == pytest.approx(math.log(2))
    assert voranon.site_count(158800, 1588.0, 1000) == 100


def test_class_tables_from_records():
    schema = voranon.Schema(
        attributes=[("color", ["red", "blue"]), ("size", ["s", "m"])],
        geographic_attribute="area",
    )
    records = [
        voranon.Record("r1", "a", ["red", "s"]),
        voranon.Record("r2", "a", ["red", "s"]),
        voranon.Record("r3", "b", ["blue", "m"]),
    ]
    table = voranon.build_class_table(records, schema)
    assert table.total == 3
    assert table.entries() == {("red", "s"): 2, ("blue", "m"): 1}
    assert table.min_cardinality() == 1
    assert voranon.max_combinations(schema) == 4

    with pytest.raises(ValueError):
        voranon.build_class_table([voranon.Record("bad", "a", ["red", "xl"])], schema)


def test_geometry_round_trip():
    sites = [(0.0, 0.0), (10.0, 0.0), (5.0, 8.0)]
    diagram = voranon.VoronoiDiagram.build(sites)
    assert diagram.site_count == 3
    assert diagram.nearest_site(1.0, 1.0) == 0
    assert diagram.nearest_site(9.0, 1.0) == 1
    assert sorted(diagram.neighbors(0)) == [1, 2]
    assert len(diagram.cell(0)) >= 3
    assert voranon.polygon_centroid([(0, 0), (2, 0), (2, 2), (0, 2)]) == (1.0, 1.0)


def test_balanced_sites_count():
    points = [(float(i % 5), float(i // 5), 10) for i in range(25)]
    sites = voranon.balanced_sites(points, 6)
    assert len(sites) == 6


def test_end_to_end_pipeline(tmp_path):
    schema, templates, dist = write_inputs(tmp_path)
    generated = voranon.generate_data(
        templates, dist, schema, seed=5, out_dir=tmp_path / "gen"
    )
    assert generated["regions"] == 40
    assert generated["records"] >= 40 * 400

    report = voranon.run_pipeline(
        tmp_path / "gen/regions.csv",
        tmp_path / "gen/records.csv",
        schema,
        k=5,
        site_count=4,
        placement="balanced",
        out_dir=tmp_path / "out",
    )
    assert report["k_anonymous"] is True
    assert report["metrics"]["site_count"] == 4
    assert report["published_records"] + report["suppressed_records"] == generated["records"]
    assert set(report["region_mapping"]) == {f"da{i}" for i in range(40)}
    assert (tmp_path / "out/anonymized_records.csv").exists()
    assert (tmp_path / "out/sites.csv").exists()

    again = voranon.run_pipeline(
        tmp_path / "gen/regions.csv",
        tmp_path / "gen/records.csv",
        schema,
        k=5,
        site_count=4,
        placement="balanced",
    )
    assert again["metrics"] == report["metrics"]


def test_adc_placement_runs(tmp_path):
    schema, templates, dist = write_inputs(tmp_path)
    voranon.generate_data(templates, dist, schema, seed=11, out_dir=tmp_path / "gen")
    report = voranon.run_pipeline(
        tmp_path / "gen/regions.csv",
        tmp_path / "gen/records.csv",
        schema,
        k=3,
        site_count=5,
        placement="adc",
        adc_seed="random",
        seed=123,
    )
    assert report["k_anonymous"] is True
    assert report["metrics"]["global_anonymity"] >= 3 or report["published_records"] == 0


def test_cli_failure_still_writes_manifest(tmp_path):
    cli = os.environ.get("VORANON_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("CLI path not provided")
    schema, templates, dist = write_inputs(tmp_path)
    bad_records = tmp_path / "bad_records.csv"
    bad_records.write_text("record_id,region_id,color,size\nr1,missing,red,s\n")
    result = subprocess.run(
        [cli, "anonymize", "--regions", str(templates), "--records", str(bad_records),
         "--schema", str(schema), "--k", "3", "--out-dir", str(tmp_path / "fail_out")],
        capture_output=True, text=True,
    )
    assert result.returncode == 1
    assert "missing" in result.stderr
    manifest = json.loads((tmp_path / "fail_out/manifest.json").read_text())
    assert manifest["success"] is False
    assert manifest["failed_stage"]


def test_cli_binary_if_available(tmp_path):
    cli = os.environ.get("VORANON_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("CLI path not provided")
    schema, templates, dist = write_inputs(tmp_path)
    gen = subprocess.run(
        [cli, "generate", "--templates", str(templates), "--dist", str(dist),
         "--schema", str(schema), "--seed", "3", "--out-dir", str(tmp_path / "cli_gen")],
        capture_output=True, text=True,
    )
    assert gen.returncode == 0, gen.stderr
    anon = subprocess.run(
        [cli, "anonymize", "--regions", str(tmp_path / "cli_gen/regions.csv"),
         "--records", str(tmp_path / "cli_gen/records.csv"), "--schema", str(schema),
         "--k", "4", "--site-count", "fixed:3", "--map",
         "--out-dir", str(tmp_path / "cli_out")],
        capture_output=True, text=True,
    )
    assert anon.returncode in (0, 3), anon.stderr
    manifest = json.loads((tmp_path / "cli_out/manifest.json").read_text())
    assert manifest["success"] is True
    report = json.loads((tmp_path / "cli_out/report.json").read_text())
    assert report["metrics"]["site_count"] == 3

    svg = ET.parse(tmp_path / "cli_out/map.svg").getroot()
    assert svg.tag.endswith("svg")
    circles = svg.findall(".//{http://www.w3.org/2000/svg}circle")
    assert len(circles) == 40 + 3  # one per region, one marker per site
