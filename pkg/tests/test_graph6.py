import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reconlab import ParseError, graph6_decode, graph6_encode, read_graph6_lines


def test_five_vertex_star_round_trip():
    rec = graph6_decode("D?{")
    assert rec.n == 5
    assert rec.adjacency.sum() == 8  # four edges into vertex 4
    assert graph6_encode(rec.adjacency) == "D?{"


def test_triangle_bit_level():
    # 'Bw': n = 'B'-63 = 3; 'w'-63 = 56 = 111000b, so x01 = x02 = x12 = 1
    rec = graph6_decode("Bw")
    np.testing.assert_array_equal(rec.adjacency, [[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def test_single_edge_record():
    # 'B_': '_'-63 = 32 = 100000b, so x01 = 1 and the padding bits are zero
    rec = graph6_decode("B_")
    np.testing.assert_array_equal(rec.adjacency, [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    same = nx.from_graph6_bytes(b"B_")
    assert sorted(same.edges()) == [(0, 1)]


@pytest.mark.parametrize("text, offset", [
    ("", 0),            # empty record
    ("~??", 0),         # long form rejected
    ("B", 1),           # truncated bit field
    ("Dw", 2),          # truncated bit field
    ("B`", 1),          # nonzero padding bits
    ("B_w", 2),         # trailing bytes
    ("B\x1f", 1),       # byte below the printable range
    ("Bé", 1),     # non-ASCII byte must not alias to '?'
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        graph6_decode(text)
    assert err.value.offset == offset


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.randoms(use_true_random=False))
def test_round_trip_random_graphs(n, rnd):
    adj = np.zeros((n, n), dtype=int)
    for j in range(n):
        for i in range(j):
            adj[i, j] = adj[j, i] = rnd.randint(0, 1)
    text = graph6_encode(adj)
    rec = graph6_decode(text)
    assert rec.n == n
    np.testing.assert_array_equal(rec.adjacency, adj)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=10), st.randoms(use_true_random=False))
def test_encoding_matches_networkx(n, rnd):
    adj = np.zeros((n, n), dtype=int)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for j in range(n):
        for i in range(j):
            if rnd.randint(0, 1):
                adj[i, j] = adj[j, i] = 1
                graph.add_edge(i, j)
    ours = graph6_encode(adj)
    theirs = nx.to_graph6_bytes(graph, header=False).decode().strip()
    assert ours == theirs


def test_read_lines_skips_comments_and_blanks():
    text = "# header\n\nBw\n  \n# more\nD?{\n>>graph6<<B_\n"
    records = read_graph6_lines(text)
    assert [(lineno, rec) for lineno, rec in records] == [(3, "Bw"), (6, "D?{"), (7, "B_")]
