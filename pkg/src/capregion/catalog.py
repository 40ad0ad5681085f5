"""Small named networks used by the demos and the test corpus."""

from capregion.network import Network, parse_network

BUTTERFLY_TEXT = """\
node s1
node s2
node u
node v
node t1
node t2
edge s1 u 1
edge s2 u 1
edge u v 1
edge s1 t1 1
edge s2 t2 1
edge v t1 1
edge v t2 1
message m1 s1 t1,t2
message m2 s2 t1,t2
"""

DIAMOND_TEXT = """\
node s
node a
node b
node t
edge s a 1
edge s b 1
edge a t 1
edge b t 1
message m1 s t
"""

# one disjoint unit path per message: independent channels
PARALLEL_TEXT = """\
node s1
node t1
node s2
node t2
edge s1 t1 1
edge s2 t2 1
message m1 s1 t1
message m2 s2 t2
"""

# two capacity-2 diamonds side by side, one message each: product region
TWIN_DIAMOND_TEXT = """\
node s1
node a1
node b1
node t1
node s2
node a2
node b2
node t2
edge s1 a1 1
edge s1 b1 1
edge a1 t1 1
edge b1 t1 1
edge s2 a2 1
edge s2 b2 1
edge a2 t2 1
edge b2 t2 1
message m1 s1 t1
message m2 s2 t2
"""


def butterfly() -> Network:
    return parse_network(BUTTERFLY_TEXT)


def diamond() -> Network:
    return parse_network(DIAMOND_TEXT)


def parallel_paths() -> Network:
    return parse_network(PARALLEL_TEXT)


def twin_diamond() -> Network:
    return parse_network(TWIN_DIAMOND_TEXT)
