import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beliefchain import (
    ChainModel,
    ConditionalBeliefTable,
    Frame,
    Variable,
    build_link,
    parse_model,
    render_model,
)
from beliefchain.dsl import tokenize
from beliefchain.errors import ModelSemanticError, ParseError

from helpers import A, E, FA, FE, on_a, on_e, random_consonant, random_mass

MODELS = Path(__file__).resolve().parent.parent / "models"

FIXTURE = """\
variable A {1, 0}
variable E {1, 0}
link A -> E method consonant {
    given A=1: {1=0.8}
    given A=0: {1=0.5}
}
belief A: {1=0.3, 0=0.2}
"""


def models_equal(m1: ChainModel, m2: ChainModel, tol=1e-12):
    if m1.variables != m2.variables or len(m1.links) != len(m2.links):
        return False
    if not m1.root_belief.isclose(m2.root_belief, tol):
        return False
    for l1, l2 in zip(m1.links, m2.links):
        if l1.method != l2.method or not l1.joint.isclose(l2.joint, tol):
            return False
        if any(not r.isclose(l2.table.rows[a], tol) for a, r in l1.table.rows.items()):
            return False
    return True


class TestParse:
    def test_fixture(self):
        model = parse_model(FIXTURE)
        assert model.variables == (A, E)
        (link,) = model.links
        assert link.method == "consonant"
        assert link.table.rows["1"][on_e("1")] == .8
        assert link.table.rows["0"][on_e("1")] == .5
        assert model.root_belief[on_a("1")] == .3
        assert model.root_belief[on_a("0")] == .2
        assert model.root_belief[FA.full_set()] == pytest.approx(.5, abs=1e-15)

    def test_shipped_fixture(self):
        text = (MODELS / "expenses.dsl").read_text()
        assert models_equal(parse_model(text), parse_model(FIXTURE), 0)

    def test_single_node(self):
        model = parse_model("variable A {1,0}\nbelief A : {1=1.0}\n")
        assert model.links == ()
        assert model.root_belief.focals == {on_a("1"): 1.0}

    def test_subset_and_comments(self):
        text = FIXTURE.replace("{1=0.5}", "{1=0.25, 1|0=0.5}  # explicit whole frame")
        row = parse_model(text).links[0].table.rows["0"]
        assert row[on_e("1")] == .25
        assert row[FE.full_set()] == .75

    def test_empty_massmap_is_vacuous(self):
        text = FIXTURE.replace("{1=0.5}", "{}")
        assert parse_model(text).links[0].table.rows["0"].is_vacuous()

    def test_chain_in_declaration_order(self):
        text = (MODELS / "deadline_chain.dsl").read_text()
        model = parse_model(text)
        assert [v.name for v in model.variables] == ["D", "A", "E"]
        assert [lk.method for lk in model.links] == ["embedding", "consonant"]

    def test_scientific_number(self):
        text = FIXTURE.replace("{1=0.5}", "{1=5e-1}")
        assert parse_model(text).links[0].table.rows["0"][on_e("1")] == .5


def error_of(text):
    with pytest.raises((ParseError, ModelSemanticError)) as info:
        parse_model(text, "m.dsl")
    return info.value


class TestErrors:
    def test_unknown_value(self):
        err = error_of(FIXTURE.replace("given A=0", "given A=2"))
        assert isinstance(err, ParseError)
        assert err.message == "unknown value '2' for variable A"
        assert (err.line, err.column) == (5, 13)
        assert str(err).startswith("m.dsl:5:13: error:")

    @pytest.mark.parametrize(
        "text, fragment, line, column",
        [
            ("variable A {1 0}", "expected ',' or '}'", 1, 15),
            ("variable A {1,0}\nbelief A: {1=0.5", "expected ',' or '}', found end of input", 2, 17),
            ("variable A {1,0}\nbelif A: {}", "expected 'variable', 'link' or 'belief'", 2, 1),
            ("variable A {1,0}\nbelief A: {1=x}", "expected number", 2, 14),
            ("variable A {1,0}\nbelief A: {1=0.5} $", "unexpected character '$'", 2, 19),
            ("variable A {1}\nbelief A: {}", "at least 2 values", 1, 10),
            ("variable A {1,1}", "duplicate value", 1, 15),
            ("variable A {1,0}\nvariable A {1,0}", "already declared", 2, 10),
            ("variable A {1,0}\nbelief B: {}", "unknown variable B", 2, 8),
            ("variable A {1,0}", "missing belief", 1, 17),
            ("variable A {1,0}\nbelief A: {}\nbelief A: {}", "only one belief", 3, 8),
            ("variable A {1,0}\nbelief A: {1=0.5, 1=0.1}", "duplicate subset", 2, 19),
            ("variable A {1,0}\nvariable E {1,0}\nbelief A: {}", "not connected", 2, 10),
        ],
    )
    def test_syntax_and_names(self, text, fragment, line, column):
        err = error_of(text)
        assert isinstance(err, ParseError)
        assert fragment in err.message
        assert (err.line, err.column) == (line, column)

    def test_duplicate_rule(self):
        err = error_of(FIXTURE.replace("given A=0", "given A=1"))
        assert "duplicate rule for A=1" in err.message and err.line == 5

    def test_missing_rule(self):
        err = error_of(FIXTURE.replace("    given A=0: {1=0.5}\n", ""))
        assert "missing rule for A=0" in err.message and err.line == 3

    def test_rule_on_wrong_variable(self):
        err = error_of(FIXTURE.replace("given A=0", "given E=0"))
        assert "antecedent is A" in err.message

    def test_unknown_method(self):
        err = error_of(FIXTURE.replace("consonant", "bayes"))
        assert "unknown method" in err.message and (err.line, err.column) == (3, 20)

    def test_belief_not_on_root(self):
        err = error_of(FIXTURE.replace("belief A: {1=0.3, 0=0.2}", "belief E: {1=0.3}"))
        assert "first variable of the chain (A)" in err.message

    def test_chain_discontinuity(self):
        text = FIXTURE + "variable W {y,n}\nvariable D {1,0}\nlink D -> W method embedding {\n given D=1: {}\n given D=0: {}\n}\n"
        err = error_of(text)
        assert "chain discontinuity" in err.message and err.line == 10

    def test_loop(self):
        text = FIXTURE + "link E -> A method embedding {\n given E=1: {}\n given E=0: {}\n}\n"
        assert "loop" in error_of(text).message

    def test_mass_sum_is_semantic(self):
        err = error_of(FIXTURE.replace("{1=0.3, 0=0.2}", "{1=0.7, 0=0.4}"))
        assert isinstance(err, ModelSemanticError)
        assert "exceeds 1" in err.message and (err.line, err.column) == (7, 11)

    def test_non_consonant_is_semantic(self):
        err = error_of(FIXTURE.replace("{1=0.8}", "{1=0.4, 0=0.4}"))
        assert isinstance(err, ModelSemanticError)
        assert "not consonant" in err.message and err.line == 3

    def test_arity_is_semantic(self):
        text = """variable X {a,b,c}\nvariable E {1,0}\nlink X -> E method dissonant {\n given X=a: {}\n given X=b: {}\n given X=c: {}\n}\nbelief X: {}\n"""
        err = error_of(text)
        assert isinstance(err, ModelSemanticError) and "binary antecedent" in err.message

    def test_every_error_has_location(self):
        for bad in ["link", "variable", "variable A {", "variable A {1,0} belief A: {1=", "\n\n   ->"]:
            err = error_of(bad)
            assert err.line >= 1 and err.column >= 1


class TestTokenize:
    def test_kinds(self):
        toks = tokenize("link A->E { given A=1: {1|0=.5} } # note")
        assert [t.kind for t in toks] == [
            "word", "word", "arrow", "word", "{", "word", "word", "=", "word", ":",
            "{", "word", "|", "word", "=", "word", "}", "}", "eof",
        ]
        assert (toks[2].line, toks[2].column) == (1, 7)


class TestRender:
    def test_fixture_round_trip(self):
        model = parse_model(FIXTURE)
        assert models_equal(parse_model(render_model(model)), model)

    def test_vacuous_row_renders_whole_frame(self):
        model = parse_model(FIXTURE.replace("{1=0.5}", "{}"))
        assert "given A=0: {1|0=1.0}" in render_model(model)


def random_model(rng):
    n = rng.randint(1, 4)
    variables = [
        Variable(f"V{i}", tuple(f"v{j}" for j in range(rng.randint(2, 3)))) for i in range(n)
    ]
    links = []
    for ant, cons in zip(variables, variables[1:]):
        cf = Frame((cons,))
        method = rng.choice(["embedding", "consonant"] + (["dissonant"] if ant.arity == 2 else []))
        gen = random_mass if method == "embedding" else random_consonant
        links.append(build_link(ConditionalBeliefTable(ant, cons, {a: gen(rng, cf) for a in ant.values}), method))
    return ChainModel(tuple(variables), tuple(links), random_mass(rng, Frame((variables[0],))))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_render_parse_round_trip(seed):
    model = random_model(random.Random(seed))
    again = parse_model(render_model(model))
    assert models_equal(again, model)
    assert render_model(again) == render_model(model) or models_equal(parse_model(render_model(again)), model)
