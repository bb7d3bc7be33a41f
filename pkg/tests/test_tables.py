import hashlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from swfront.tables import Table, read_table, write_table


def test_round_trip_is_exact(tmp_path):
    t = Table({"x": np.array([0.1, 1 / 3, -2e-300]), "name": ["a", "b", "c"]})
    p = tmp_path / "t.csv"
    digest = write_table(p, t)
    assert digest == hashlib.sha256(p.read_bytes()).hexdigest()
    back = read_table(p)
    assert back.header == ["x", "name"]
    assert np.array_equal(back["x"], t["x"])
    assert list(back["name"]) == ["a", "b", "c"]


def test_format():
    import tempfile, os
    with tempfile.TemporaryDirectory() as d:
        p = os.path.join(d, "t.csv")
        write_table(p, Table({"a": [0.1], "ok": [True]}))
        assert open(p, encoding="utf-8").read() == "a,ok\n0.10000000000000001,1\n"


def test_where_and_length():
    t = Table({"t": [0.0, 0.0, 1.0], "v": [1.0, 2.0, 3.0]})
    assert len(t) == 3
    assert list(t.where("t", 0.0)["v"]) == [1.0, 2.0]
    with pytest.raises(ValueError):
        Table({"a": [1.0], "b": [1.0, 2.0]})


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=30))
def test_floats_survive(tmp_path_factory, xs):
    p = tmp_path_factory.mktemp("t") / "f.csv"
    write_table(p, Table({"v": xs}))
    assert np.array_equal(read_table(p)["v"], np.array(xs))
