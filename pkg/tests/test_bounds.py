import csv
import io
import json
import math
import random
from fractions import Fraction

import pytest

from fslz.bounds import (
    BoundParams,
    build_report,
    csv_fields,
    lemma1_bound,
    lemma1_slack,
    lz78_lower_estimate,
    nominal_bits,
    phrase_stats,
    reports_to_csv,
)
from fslz.codecs import ParseResult, encode
from fslz.codecs._base import Phrase
from fslz.core import Algorithm, Alphabet
from oracles import histogram_entropy

AB = Alphabet(("a", "b"))


def fake_parse(phrases, algo=Algorithm.LZ78, A=2, params=None):
    out, pos = [], 0
    for p in phrases:
        out.append(Phrase(tuple(p), pos))
        pos += len(p)
    return ParseResult(algo, A, tuple(out), tuple((0, None) for _ in out), params or {})


def test_stats_uniform():
    st = phrase_stats(fake_parse([(0,), (1,), (0,), (1,)]))
    assert st.c == 4 and st.k == 2
    assert st.distribution == {(0,): 0.5, (1,): 0.5}


def test_stats_from_lz78_parse():
    _, parse = encode(AB.encode("aaaaaa"), "lz78")
    st = phrase_stats(parse)
    assert st.k == 3 and set(st.distribution.values()) == {Fraction(1, 3)}
    assert sum(st.distribution.values()) == 1


def test_stats_point_mass_and_empty():
    assert phrase_stats(fake_parse([(0, 1)])).distribution == {(0, 1): 1}
    with pytest.raises(ValueError):
        phrase_stats(fake_parse([]))


UNIFORM_8 = [(0, 1), (1, 0), (0, 1), (1, 0)]  # c=4, n=8, two values at 1/2


@pytest.mark.parametrize("phrases,s,expected", [
    (UNIFORM_8, 1, 0.5),
    (UNIFORM_8, 2, -0.5),
    ([(0, 0, 0)], 1, 0.0),
])
def test_phrase_entropy_bound_examples(phrases, s, expected):
    assert lemma1_bound(phrase_stats(fake_parse(phrases)), BoundParams(s)) == \
        pytest.approx(expected, abs=1e-12)


def test_bound_slack_separate():
    st = phrase_stats(fake_parse(UNIFORM_8))
    assert lemma1_slack(st) == 0.5


def test_bound_params_reject_zero_states():
    with pytest.raises(ValueError):
        BoundParams(0)


def test_lower_estimate_examples():
    assert lz78_lower_estimate(AB.encode("aaaaaa")) == pytest.approx(3 * math.log2(3) / 6)
    assert lz78_lower_estimate(AB.encode("a")) == 0


def test_lower_estimate_on_constant_input_decreases():
    vals = [lz78_lower_estimate([0] * n, 2) for n in (10**3, 10**4, 10**5)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 0.05


def test_nominal_ratio_lru_example():
    parse = fake_parse([(0,) * 10] * 100, Algorithm.LZ78_LRU, params={"D": 256})
    assert nominal_bits(parse) / 1000 == pytest.approx(1.0)


def test_report_empty_input():
    container, parse = encode([], "lz78lru", alphabet=2, D=16)
    r = build_report(parse, container, [1, 2])
    assert r.actual_ratio == 0 and r.nominal_ratio == 0 and r.n == 0


@pytest.mark.parametrize("algo", ["lz78", "lzw", "lz78lru", "lzwlru", "lz77w"])
def test_report_accounting_identity(algo):
    rng = random.Random(3)
    x = [rng.randrange(4) for _ in range(3000)]
    params = {} if algo in ("lz78", "lzw") else {"D": 32}
    container, parse = encode(x, algo, alphabet=4, **params)
    r = build_report(parse, container, [1, 2, 4])
    assert r.actual_ratio * r.n * math.log2(4) == pytest.approx(r.payload_bits, abs=1e-9)
    assert r.payload_bits == container.payload.bit_length
    bounds = [r.lemma1_bounds[s] for s in (1, 2, 4)]
    assert bounds == sorted(bounds, reverse=True)
    assert r.k <= r.c


def test_report_rejects_mismatched_parse():
    c1, _ = encode([0, 1, 1], "lz78", alphabet=2)
    _, p2 = encode([0, 1, 1, 0], "lz78", alphabet=2)
    with pytest.raises(ValueError):
        build_report(p2, c1)
    c3, _ = encode([0, 1, 1], "lzw", alphabet=2)
    with pytest.raises(ValueError):
        build_report(p2, c3)


def test_entropy_matches_histogram():
    rng = random.Random(17)
    for _ in range(30):
        x = [rng.randrange(3) for _ in range(rng.randrange(1, 2000))]
        _, parse = encode(x, "lz78lru", alphabet=3, D=rng.choice([2, 8, 64]))
        st = phrase_stats(parse)
        assert st.entropy() == pytest.approx(
            histogram_entropy(p.symbols for p in parse.phrases), abs=1e-9)
        assert sum(st.distribution.values()) == 1


def test_lru_phrase_probability_cap():
    rng = random.Random(5)
    for D in (2, 8, 32):
        x = [rng.randrange(2) for _ in range(5000)]
        _, parse = encode(x, "lz78lru", alphabet=2, D=D, recency=1)
        st = phrase_stats(parse)
        L_max = parse.params["L_max"]
        for z, p in st.distribution.items():
            if len(z) <= L_max:
                assert p <= 1 / D + 2 / st.c


def test_csv_and_json_field_order():
    container, parse = encode([0, 1] * 50, "lz78lru", alphabet=2, D=8)
    r = build_report(parse, container, [1, 2])
    d = r.to_dict()
    fields = csv_fields([1, 2])
    assert list(d)[:len(fields)] == fields
    assert json.loads(r.to_json()) == json.loads(json.dumps(d))
    rows = list(csv.DictReader(io.StringIO(reports_to_csv([d], fields))))
    assert list(rows[0]) == fields
    assert int(rows[0]["payload_bits"]) == r.payload_bits
