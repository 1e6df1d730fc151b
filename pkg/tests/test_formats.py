import json

import pytest
from hypothesis import given, strategies as st

from wittgrass.formats import (InputError, format_entry, load_chain, load_matrix, parse_entry,
                               parse_local, split_entry)
from wittgrass.ring import field_for_q, galois_ring


def test_split_entry_forms():
    assert split_entry("1.2*p^3") == (["1", "2"], 3)
    assert split_entry("p^-2*(0:1.1)") == (["0:1", "1"], -2)
    assert split_entry(" 4 ") == (["4"], 0)
    for bad in ("p^x*(1)", "1*p", "(1)", "*p^2"):
        with pytest.raises(InputError):
            split_entry(bad)


def test_entries_are_teichmuller_expansions():
    R = galois_ring(field_for_q(3), 4)
    assert parse_entry(R, "1") == 1
    assert parse_entry(R, "0.1") == 3
    assert parse_entry(R, "2") == R.teichmuller(2)
    assert parse_entry(R, "1*p^5") == 0  # beyond the precision
    assert parse_entry(R, "0.1*p^-1") == 1
    with pytest.raises(InputError):
        parse_entry(R, "1*p^-1")
    assert parse_local(R, "1*p^-1") == (-1, 1)


def test_digit_errors():
    R = galois_ring(field_for_q(4), 2)
    assert parse_entry(R, "0:1") == R.teichmuller(R.residue_field().from_coeffs([0, 1]))
    for bad in ("2", "0:1:1", "a"):
        with pytest.raises(InputError):
            parse_entry(R, bad)
    with pytest.raises(InputError):
        parse_entry(galois_ring(field_for_q(3), 2), "1:0")


@given(st.sampled_from([2, 3, 4, 9]), st.integers(1, 4), st.data())
def test_format_parse_roundtrip(q, N, data):
    R = galois_ring(field_for_q(q), N)
    x = data.draw(st.sampled_from(R.elements()))
    assert parse_entry(R, format_entry(R, x)) == x


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_load_matrix(tmp_path):
    doc = {"p": 2, "d": 2, "N": 3, "n": 2, "entries": [["1", "0"], ["0:1*p^1", "1"]]}
    mf = load_matrix(_write(tmp_path, "m.json", json.dumps(doc)))
    R = mf.ctx
    assert (R.p, R.d, R.N) == (2, 2, 3)
    assert mf.matrix()[1][0] == R.mul(R.ppow(1), R.teichmuller(R.residue_field().from_coeffs([0, 1])))


def test_error_positions(tmp_path):
    text = '{"p": 3, "d": 1, "N": 4, "n": 2,\n "entries": [["1", "0"],\n   ["0", "1*q^2"]]}'
    mf = load_matrix(_write(tmp_path, "m.json", text))
    with pytest.raises(InputError) as err:
        mf.matrix()
    assert (err.value.line, err.value.col) == (3, 11)  # first character inside the quotes

    with pytest.raises(InputError) as err:
        load_matrix(_write(tmp_path, "broken.json", '{"p": 3,\n  "d" 1}'))
    assert (err.value.line, err.value.col) == (2, 7)


@pytest.mark.parametrize("doc", [
    {"p": 4, "d": 1, "N": 2, "n": 1, "entries": [["1"]]},
    {"p": 3, "d": 1, "N": 2, "n": 2, "entries": [["1"]]},
    {"p": 3, "d": 1, "N": 2, "entries": [["1"]]},
    [1, 2],
])
def test_bad_matrix_files(tmp_path, doc):
    with pytest.raises(InputError):
        load_matrix(_write(tmp_path, "m.json", json.dumps(doc)))


def test_load_chain(tmp_path):
    R = galois_ring(field_for_q(3), 3)
    path = _write(tmp_path, "c.json", json.dumps({"vectors": [["0.1", "0"], ["1", "0"]]}))
    assert load_chain(path, R, 2) == [[3, 0], [1, 0]]
    with pytest.raises(InputError):
        load_chain(path, R, 3)
    with pytest.raises(InputError):
        load_matrix(str(tmp_path / "missing.json"))
