import json

import pytest

from egtkit import cli, harness
from egtkit.graph import CapacityError, complete, complete_bipartite, cycle, k4_minus, sharpness_family
from egtkit.graph6 import Graph6Error, encode_graph6
from egtkit.harness import (
    FILTER_ORDER,
    HuntSummary,
    RunManifest,
    audit,
    evaluate,
    family_sweep,
    hunt,
    labeled_enumeration,
    partitions_up_to,
    resolve_filters,
    verify,
)
from egtkit.report import VerificationRecord

from .conftest import catalog_graphs


def lines_of(*graphs):
    return [encode_graph6(g) + "\n" for g in graphs]


class TestEvaluate:
    def test_k4(self):
        rec = evaluate(complete(4))
        assert (rec.alpha1, rec.tau, rec.taub) == (2, 2, 2)
        assert (rec.slack_egt, rec.slack_bip) == (0, 0)
        assert {"sharp_egt", "sharp_bip", "triangular", "mindeg_pass", "k4minus_free"} <= rec.flags

    def test_c5(self):
        rec = evaluate(cycle(5))
        assert (rec.alpha1, rec.tau, rec.taub) == (5, 0, 1)
        assert (rec.slack_egt, rec.slack_bip) == (5, 1)
        assert "near_sharp_bip" in rec.flags and "sharp_egt" not in rec.flags

    def test_k33(self):
        rec = evaluate(complete_bipartite(3, 3))
        assert (rec.alpha1, rec.tau, rec.taub) == (9, 0, 0)
        assert {"sharp_egt", "sharp_bip"} <= rec.flags

    def test_variant_leaves_other_sum_empty(self):
        assert evaluate(cycle(5), variant="egt").taub is None
        assert evaluate(cycle(5), variant="bip").tau is None

    def test_slack_ordering_and_flags(self):
        for g in labeled_enumeration(5):
            rec = evaluate(g)
            assert rec.slack_bip <= rec.slack_egt
            assert ("sharp_egt" in rec.flags) == (rec.slack_egt == 0)
            assert not rec.violation

    def test_violation_triggers_oracle(self, monkeypatch):
        monkeypatch.setattr(harness, "alpha1_exact", lambda g: type("R", (), {"value": 99})())
        with pytest.raises(harness.OracleMismatch):
            evaluate(complete(4))


class TestVerify:
    def test_order_and_counts(self):
        src = lines_of(complete(4), cycle(5), complete_bipartite(3, 3))
        manifest = RunManifest(source="t")
        recs = list(verify(src, manifest))
        assert [r.n for r in recs] == [4, 5, 6]
        assert (manifest.processed, manifest.skipped, manifest.complete) == (3, 0, True)
        assert (manifest.sharp_egt, manifest.sharp_bip) == (2, 2)

    def test_processed_plus_skipped_is_lines_consumed(self):
        src = [">>graph6<<\n", "C~\n", "\n", "Bx\n", "Bw\n", encode_graph6(cycle(9)) + "\n", "\n"]
        manifest = RunManifest(source="t")
        list(verify(src, manifest, strict=False, maxcut_limit=8))
        assert manifest.processed == 2
        assert manifest.skip_reasons == {"blank": 3, "parse:padding": 1, "capacity": 1}
        assert manifest.processed + manifest.skipped == len(src)
        assert manifest.cursor == len(src)

    def test_strict_parse_error(self):
        with pytest.raises(Graph6Error) as info:
            list(verify(["C~\n", "Bx\n"]))
        assert info.value.lineno == 2

    def test_max_graphs_then_resume(self):
        graphs = [g for g in catalog_graphs(5)]
        src = lines_of(*graphs)
        full = list(verify(src))
        manifest = RunManifest(source="t")
        head = list(verify(src, manifest, max_graphs=7))
        assert len(head) == 7 and not manifest.complete and manifest.cursor == 7
        tail = list(verify(src, manifest))
        assert head + tail == full
        assert manifest.complete and manifest.processed == len(src)

    def test_manifest_json_round_trip(self, tmp_path):
        manifest = RunManifest(source="x", filters=["mindeg"], processed=3)
        manifest.skip("blank", 2)
        path = tmp_path / "m.json"
        manifest.save(str(path))
        assert RunManifest.load(str(path)) == manifest
        assert json.loads(path.read_text())["schema_version"] == 1


class TestHunt:
    def test_mindeg_alone_n5(self):
        summary = HuntSummary()
        recs = list(hunt(((None, g) for g in labeled_enumeration(5)), "egt", ["mindeg"], summary))
        expected = sum(1 for g in labeled_enumeration(5) if g.min_degree() >= 3)
        assert summary.survivors == len(recs) == expected
        assert summary.eliminated["mindeg"] == 1024 - expected
        assert all(r.slack_egt >= 0 and r.taub is None for r in recs)

    def test_c5_eliminated_before_solvers(self, monkeypatch):
        def boom(*a, **k):
            raise AssertionError("solver called")

        monkeypatch.setattr(harness, "alpha1_exact", boom)
        summary = HuntSummary()
        assert list(hunt([(None, cycle(5))], "egt", summary=summary)) == []
        assert summary.eliminated["mindeg"] == 1

    def test_k6_survives(self):
        [rec] = hunt([(None, complete(6))], "egt")
        assert rec.slack_egt == 0

    def test_bip_filters(self):
        summary = HuntSummary()
        graphs = [(None, complete(5)), (None, complete_bipartite(3, 3)), (None, k4_minus())]
        list(hunt(graphs, "bip", summary=summary))
        # neither K5 nor K_{3,3} has an induced K4^-
        assert summary.eliminated["k4minus"] == 2
        assert summary.examined == 3

    def test_filter_validation(self):
        assert resolve_filters(["dense-cut", "mindeg"], "egt") == ["mindeg", "dense-cut"]
        with pytest.raises(ValueError):
            resolve_filters(["k4minus"], "egt")
        with pytest.raises(ValueError):
            resolve_filters(None, "both")
        assert list(FILTER_ORDER).index("mindeg") == 0


class TestFamilies:
    def test_partitions(self):
        assert sorted(partitions_up_to(3)) == [(1,), (1, 1), (1, 1, 1), (2,), (2, 1), (3,)]

    @pytest.mark.parametrize("rs", [(1, 1), (3,), (2, 1)])
    def test_named_cases(self, rs):
        rec = evaluate(sharpness_family(list(rs)))
        assert rec.slack_egt == 0 and "sharp_egt" in rec.flags

    def test_sweep_order(self):
        names = [rs for rs, _ in family_sweep(6)]
        assert names[:3] == [(1,), (2,), (1, 1)]
        assert len(names) == 6


class TestLabeledEnumeration:
    @pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (2, 2), (3, 8), (4, 64)])
    def test_counts(self, n, count):
        assert sum(1 for _ in labeled_enumeration(n)) == count

    def test_distinct(self):
        assert len({g.adj for g in labeled_enumeration(4)}) == 64

    def test_mask_order(self):
        first, second = list(labeled_enumeration(3))[:2]
        assert first.m == 0 and second.edges() == [(0, 1)]

    def test_capacity(self):
        with pytest.raises(CapacityError):
            next(labeled_enumeration(8))


class TestAudit:
    def test_k4(self):
        info = audit(complete(4), "C~")
        assert info["triangular"] and info["min_degree"] == 3 and info["mindeg_pass"]
        assert info["k4minus_free"]
        assert (info["slack_egt"], info["slack_bip"]) == (0, 0)
        assert len(info["singletons"]) == 4
        assert info["maximal_cliques"] == [{"clique": [0, 1, 2, 3], "extension": None, "extenders": None}]

    def test_c5(self):
        info = audit(cycle(5))
        assert not info["triangular"]
        assert info["dense_cut"]["status"] == "refuted" and len(info["dense_cut"]["s"]) == 1

    def test_k4_minus(self):
        info = audit(k4_minus())
        assert info["has_induced_k4_minus"] and info["k4_minus_witness"] == [0, 1, 2, 3]

    def test_singleton_slacks_nonnegative(self):
        for g in (complete(5), cycle(5), k4_minus(), sharpness_family([2, 1])):
            info = audit(g)
            for item in info["singletons"]:
                assert item["peel_slack"] >= 0 and item["denseboth_slack_x2"] >= 0

    def test_json_serialisable(self):
        json.dumps(audit(sharpness_family([1, 1, 1])))


def write_input(tmp_path, lines, name="in.g6"):
    path = tmp_path / name
    path.write_text("".join(lines))
    return str(path)


class TestCli:
    def test_invariants_json(self, capsys):
        assert cli.main(["invariants", "C~", "--json"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert (out["alpha1"], out["tau"], out["taub"], out["slack_egt"]) == (2, 2, 2, 0)

    def test_verify_csv(self, tmp_path):
        src = write_input(tmp_path, ["C~\n", "Bw\n"])
        out = tmp_path / "r.csv"
        assert cli.main(["verify", "--input", src, "--output", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[1].startswith("C~,4,6,2,2,2,0,0,")
        manifest = json.loads((tmp_path / "r.csv.manifest.json").read_text())
        assert manifest["complete"] and manifest["processed"] == 2

    def test_resume_is_byte_identical(self, tmp_path, monkeypatch):
        monkeypatch.setattr(harness, "BATCH", 4)
        src = write_input(tmp_path, ["\n"] + lines_of(*catalog_graphs(5)) + ["\n"])
        ref, part = tmp_path / "ref.csv", tmp_path / "part.csv"
        assert cli.main(["verify", "--input", src, "--output", str(ref)]) == 0
        assert cli.main(["verify", "--input", src, "--output", str(part), "--max-graphs", "10"]) == 0
        assert len(part.read_text().splitlines()) < len(ref.read_text().splitlines())
        assert cli.main(["verify", "--input", src, "--output", str(part), "--resume"]) == 0
        assert part.read_bytes() == ref.read_bytes()

    def test_resume_discards_unsaved_tail(self, tmp_path, monkeypatch):
        monkeypatch.setattr(harness, "BATCH", 4)
        src = write_input(tmp_path, lines_of(*catalog_graphs(5)))
        ref, part = tmp_path / "ref.csv", tmp_path / "part.csv"
        cli.main(["verify", "--input", src, "--output", str(ref)])
        cli.main(["verify", "--input", src, "--output", str(part), "--max-graphs", "6"])
        with open(part, "a") as fh:
            fh.write("partial line from a killed run")
        assert cli.main(["verify", "--input", src, "--output", str(part), "--resume"]) == 0
        assert part.read_bytes() == ref.read_bytes()

    def test_workers_give_same_bytes(self, tmp_path):
        src = write_input(tmp_path, lines_of(*catalog_graphs(5)))
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        cli.main(["verify", "--input", src, "--output", str(a), "--workers", "1", "--format", "text"])
        cli.main(["verify", "--input", src, "--output", str(b), "--workers", "3", "--format", "text"])
        assert a.read_bytes() == b.read_bytes()

    def test_workers_env(self, monkeypatch):
        monkeypatch.setenv(harness.WORKERS_ENV, "3")
        assert harness.default_workers() == 3
        monkeypatch.delenv(harness.WORKERS_ENV)
        assert harness.default_workers() == 1

    def test_exit_violation(self, tmp_path, monkeypatch):
        fake = VerificationRecord("C~", 4, 6, 5, 2, 2, frozenset({"egt_violation", "bip_violation"}))
        monkeypatch.setattr(harness, "evaluate", lambda *a, **k: fake)
        src = write_input(tmp_path, ["C~\n"])
        assert cli.main(["verify", "--input", src, "--output", str(tmp_path / "r.csv")]) == 1

    def test_exit_input_error_strict(self, tmp_path):
        src = write_input(tmp_path, ["C~\n", "Bx\n"])
        assert cli.main(["verify", "--input", src, "--output", str(tmp_path / "r.csv")]) == 2

    def test_lenient_keeps_going(self, tmp_path):
        src = write_input(tmp_path, ["C~\n", "Bx\n", "Bw\n"])
        out = tmp_path / "r.csv"
        assert cli.main(["verify", "--input", src, "--output", str(out), "--lenient"]) == 2
        assert len(out.read_text().splitlines()) == 3

    def test_exit_capacity(self, tmp_path):
        src = write_input(tmp_path, ["C~\n"])
        assert cli.main(["verify", "--input", src, "--output", str(tmp_path / "r.csv"), "--maxcut-limit", "2"]) == 3
        assert cli.main(["invariants", "C~", "--maxcut-limit", "2"]) == 3

    def test_bad_graph6_argument(self):
        assert cli.main(["invariants", "C"]) == 2

    def test_families(self, capsys):
        assert cli.main(["families", "--max-n", "6"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 7

    def test_hunt_summary(self, capsys):
        assert cli.main(["hunt", "--n", "4", "--filters", "mindeg"]) == 0
        summary = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert summary["examined"] == 64
        assert summary["survivors"] == 1  # only K4 has min degree 3

    def test_hunt_rejects_foreign_filter(self):
        assert cli.main(["hunt", "--n", "4", "--filters", "k4minus"]) == 2

    def test_audit_text(self, capsys):
        assert cli.main(["audit", "C~"]) == 0
        assert "slack_egt" in capsys.readouterr().out
