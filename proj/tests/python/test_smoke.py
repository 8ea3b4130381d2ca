import itertools
import pathlib

import pytest

ccqbf = pytest.importorskip("ccqbf")

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def example():
    return ccqbf.parse_qdimacs((DATA / "worked_example.qdimacs").read_text(), cls="2cnf")


def expand(formula):
    """Plain game-tree expansion over the QDIMACS text, independent of the core."""
    prefix = formula.prefix
    clauses, xors = [], []
    for line in formula.to_qdimacs().splitlines():
        parts = line.split()
        if not parts or parts[0] in ("c", "p", "e", "a"):
            continue
        if parts[0] == "x":
            xors.append([int(t) for t in parts[1:-1]])
        else:
            clauses.append([int(t) for t in parts[:-1]])

    def ground(val):
        for c in clauses:
            if not any(val[abs(l)] == (l > 0) for l in c):
                return False
        for x in xors:
            parity = sum(val[abs(l)] ^ (l < 0) for l in x) % 2
            if parity != 1:
                return False
        return True

    def go(i, val):
        if i == len(prefix):
            return ground(val)
        q, v = prefix[i]
        results = (go(i + 1, {**val, v: b}) for b in (False, True))
        return any(results) if q == "e" else all(results)

    return go(0, {})


def test_example_solves_true_with_two_cnf_backdoor():
    f = example()
    r = ccqbf.solve(f)
    assert r["value"] is True
    assert r["algorithm"] == "TwoCnfBackdoor"
    assert r["k"] == 3
    assert r["leaves"] <= 8
    assert ccqbf.detect(f, "2cnf") == [3, 4, 5]


def test_roundtrip_and_bruteforce_agree():
    f = example()
    assert ccqbf.parse_qdimacs(f.to_qdimacs()) == f
    assert ccqbf.eval_bruteforce(f) is True
    assert ccqbf.verify_strategy(f, ccqbf.strategy(f))


@pytest.mark.parametrize("cls", ["2cnf", "aff", "posneg", "negpos"])
def test_random_instances_match_expansion(cls):
    for seed in range(40):
        f = ccqbf.generate(n=7, k=3, cls=cls, seed=seed)
        assert ccqbf.solve(f)["value"] == expand(f), f.to_qdimacs()


def test_kernel_preserves_value():
    for seed in range(30):
        f = ccqbf.generate(n=9, k=3, cls="aff", seed=seed)
        assert expand(ccqbf.kernelize(f)) == expand(f)


def test_mis_reductions():
    graph = "parts 1 1\n1 2\n"
    assert not ccqbf.has_mis(graph)
    assert ccqbf.solve(ccqbf.mis_to_horn(graph))["value"] is True
    assert ccqbf.solve(ccqbf.mis_to_ihsb_minus(graph))["value"] is True
    assert ccqbf.solve(ccqbf.horn_to_3horn(ccqbf.mis_to_horn(graph)))["value"] is True


def test_dualize_involution():
    f = ccqbf.generate(n=8, k=2, cls="horn", seed=3)
    d = ccqbf.dualize(f)
    assert d.base_class == "dualhorn"
    assert ccqbf.dualize(d) == f
    assert expand(d) == expand(f)


def test_classify_goldens():
    assert ccqbf.classify("impl 2 : 00,01,11\n") == "FPT"
    assert ccqbf.classify("or3 3 : 001,010,011,100,101,110,111\nimpl 2 : 00,01,11\n") == "Open_dIhsbPlus(3)"
    assert ccqbf.classify("one 3 : 100,010,001\n") == "ParaPspaceHard"


def test_errors_are_python_exceptions():
    with pytest.raises(ccqbf.ParseError):
        ccqbf.parse_qdimacs("p cnf 1 1\ne 1 0\n1 -1 0\n")
    with pytest.raises(ccqbf.Error):
        ccqbf.solve(example(), algorithm="aff")
    with pytest.raises(ccqbf.Error):
        ccqbf.solve(example(), algorithm="nonsense")
