"""
Unit tests for instance documents and schedule rendering.
"""

import json

import pytest

pytestmark = pytest.mark.unit


class TestCanonicalDocuments:
    """Tests for dumps / loads."""

    def test_reload_is_identity(self, toy_car):
        """Verify loading and dumping again reproduces the text."""
        from src.documents import dumps, loads

        text = dumps(toy_car.ppi, toy_car.pplan)
        ppi, pp = loads(text)

        assert dumps(ppi, pp) == text
        assert pp.plan.order == toy_car.pplan.plan.order
        assert pp.nonconc == toy_car.pplan.nonconc
        assert ppi == toy_car.ppi

    def test_order_stored_as_reduction(self, toy_car):
        """Verify only covering pairs go to disk."""
        from src.documents import dumps

        raw = json.loads(dumps(toy_car.ppi, toy_car.pplan))

        assert len(raw["order"]) == 8
        assert raw["format_version"] == 1
        assert raw["order"] == sorted(raw["order"])

    def test_atoms_and_literals(self, clobber_plan):
        """Verify atoms are collected and literals written with "!"."""
        from src.documents import dumps
        from src.models import ParallelPlan

        plan, ppi = clobber_plan
        raw = json.loads(dumps(ppi, ParallelPlan(plan=plan)))

        assert raw["atoms"] == ["g", "h", "p"]
        assert raw["actions"][1] == {"id": "b", "pre": [], "post": ["h", "!p"], "duration": 1}

    def test_meta_roundtrip(self, toy_car, tmp_path):
        """Verify save writes meta and load_with_meta returns it."""
        from src.documents import load_with_meta, save

        path = tmp_path / "car.json"
        save((toy_car.ppi, toy_car.pplan), path, meta={"generator": "toycar"})
        _, pp, meta = load_with_meta(path)

        assert meta == {"generator": "toycar"}
        assert len(pp.plan.actions) == 9

    def test_trailing_newline_and_sorted_keys(self, toy_car):
        """Verify the canonical text layout."""
        from src.documents import dumps

        text = dumps(toy_car.ppi, toy_car.pplan)

        assert text.endswith("}\n")
        assert text.index('"actions"') < text.index('"atoms"') < text.index('"format_version"')


class TestDocumentErrors:
    """Tests for parse and semantic errors."""

    def test_malformed_json(self):
        """Verify malformed JSON reports its line."""
        from src.documents import loads
        from src.exceptions import ParseError

        with pytest.raises(ParseError) as exc_info:
            loads('{\n  "atoms": [\n')

        assert exc_info.value.line is not None

    def test_schema_mismatch(self):
        """Verify a wrong field type names the field."""
        from src.documents import loads
        from src.exceptions import ParseError

        with pytest.raises(ParseError) as exc_info:
            loads('{"actions": "nope"}')

        assert exc_info.value.field == "actions"

    def test_unknown_key(self):
        """Verify unexpected top-level keys are refused."""
        from src.documents import loads
        from src.exceptions import ParseError

        with pytest.raises(ParseError):
            loads('{"extra": 1}')

    def test_undeclared_atom(self):
        """Verify literals must use declared atoms."""
        from src.documents import loads
        from src.exceptions import SemanticError

        doc = {"atoms": ["p"], "actions": [{"id": "a", "post": ["q"]}]}

        with pytest.raises(SemanticError) as exc_info:
            loads(json.dumps(doc))

        assert exc_info.value.element == "q"

    def test_unknown_action_in_order(self):
        """Verify order pairs must name actions."""
        from src.documents import loads
        from src.exceptions import SemanticError

        doc = {"actions": [{"id": "a"}], "order": [["a", "b"]]}

        with pytest.raises(SemanticError):
            loads(json.dumps(doc))

    def test_duplicate_ids(self):
        """Verify action ids must be unique."""
        from src.documents import loads
        from src.exceptions import SemanticError

        doc = {"actions": [{"id": "a"}, {"id": "a"}]}

        with pytest.raises(SemanticError):
            loads(json.dumps(doc))

    def test_cyclic_order(self):
        """Verify a cyclic order is reported."""
        from src.documents import loads
        from src.exceptions import SemanticError

        doc = {"actions": [{"id": "a"}, {"id": "b"}], "order": [["a", "b"], ["b", "a"]]}

        with pytest.raises(SemanticError):
            loads(json.dumps(doc))

    def test_non_utf8_file(self, tmp_path):
        """Verify undecodable bytes raise ParseError naming the file."""
        from src.documents import load
        from src.exceptions import ParseError

        path = tmp_path / "binary.json"
        path.write_bytes(b"\xff\xfe{}")

        with pytest.raises(ParseError) as exc_info:
            load(path)

        assert exc_info.value.field == str(path)

    def test_unsupported_version(self):
        """Verify other format versions are refused."""
        from src.documents import loads
        from src.exceptions import SemanticError

        with pytest.raises(SemanticError):
            loads('{"format_version": 2}')


class TestExecutions:
    """Tests for execution documents."""

    def test_execution_reload(self, toy_car):
        """Verify an execution survives dump and load."""
        from src.documents import dumps_execution, loads_execution
        from src.parallel import sequential_execution

        execution = sequential_execution(toy_car.pplan)
        back = loads_execution(dumps_execution(execution), toy_car.pplan.plan)

        assert back == execution

    def test_unknown_action(self, toy_car):
        """Verify unknown ids are refused."""
        from src.documents import loads_execution
        from src.exceptions import ParseError

        with pytest.raises(ParseError):
            loads_execution('{"release": {"Fly": 0}}', toy_car.pplan.plan)

    def test_non_integer_release(self, toy_car):
        """Verify release times must be integers."""
        from src.documents import loads_execution
        from src.exceptions import ParseError

        with pytest.raises(ParseError):
            loads_execution('{"release": {"MvS": 1.5}}', toy_car.pplan.plan)


class TestRenderSchedule:
    """Tests for the text Gantt chart."""

    def test_small_chart(self):
        """Verify the exact layout of a two-action chart."""
        from src.documents import render_schedule
        from src.models import Action, ParallelPlan, PartialOrderPlan
        from src.order import transitive_closure
        from src.parallel import dppl

        plan = PartialOrderPlan(
            actions=[Action(id="ab", duration=2), Action(id="c", duration=1)],
            order=transitive_closure({("ab", "c")}),
        )
        pp = ParallelPlan(plan=plan)

        assert render_schedule(pp, dppl(pp)) == "   |012|\nab |##.|\nc  |..#|\nmakespan=3\n"

    def test_toy_car_chart(self, toy_car):
        """Verify one row per action plus header and footer."""
        from src.documents import render_schedule
        from src.parallel import dppl, prf

        pp = prf(toy_car.pplan)
        lines = render_schedule(pp, dppl(pp)).splitlines()

        assert len(lines) == 9 + 2
        assert lines[-1] == "makespan=25"
        assert lines[-2].startswith("MvS")
        assert lines[-2].count("#") == 3

    def test_zero_duration_marker(self):
        """Verify zero-duration actions show a bar."""
        from src.documents import render_schedule
        from src.models import Action, Execution, ParallelPlan, PartialOrderPlan

        plan = PartialOrderPlan(actions=[Action(id="z", duration=0), Action(id="w", duration=2)])
        pp = ParallelPlan(plan=plan)
        chart = render_schedule(pp, Execution.of(plan, {"z": 1, "w": 0}))

        assert chart == "  |01|\nw |##|\nz |.||\nmakespan=2\n"

    def test_long_makespan_is_scaled(self):
        """Verify a long schedule is grouped into at most max_width columns."""
        from src.documents import render_schedule
        from src.models import Action, ParallelPlan, PartialOrderPlan
        from src.order import transitive_closure
        from src.parallel import dppl

        plan = PartialOrderPlan(
            actions=[Action(id="a", duration=1000), Action(id="b", duration=3)],
            order=transitive_closure({("a", "b")}),
        )
        pp = ParallelPlan(plan=plan)
        chart = render_schedule(pp, dppl(pp), max_width=10)

        assert chart == " |0123456789|\na |##########|\nb |.........#|\nmakespan=1003 scale=101\n"

    def test_default_width_caps_rows(self):
        """Verify rows never exceed the default width."""
        from src.documents import DEFAULT_CHART_WIDTH, render_schedule
        from src.models import Action, Execution, ParallelPlan, PartialOrderPlan

        plan = PartialOrderPlan(actions=[Action(id="x", duration=5)])
        chart = render_schedule(ParallelPlan(plan=plan), Execution.of(plan, {"x": 10**6}))

        rows = chart.splitlines()[:-1]
        assert all(len(row) == DEFAULT_CHART_WIDTH + 4 for row in rows)
        assert chart.splitlines()[-1].startswith("makespan=1000005 scale=")

    def test_non_positive_width(self, toy_car):
        """Verify max_width must be positive."""
        from src.documents import render_schedule
        from src.parallel import dppl

        with pytest.raises(ValueError):
            render_schedule(toy_car.pplan, dppl(toy_car.pplan), max_width=0)

    def test_invalid_execution(self, toy_car):
        """Verify charts are only drawn for executions."""
        from src.documents import render_schedule
        from src.exceptions import InvalidExecution
        from src.models import Execution

        execution = Execution.of(toy_car.pplan.plan, {a: 0 for a in toy_car.pplan.plan.ids})

        with pytest.raises(InvalidExecution):
            render_schedule(toy_car.pplan, execution)
