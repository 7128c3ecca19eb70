import dataclasses
import json

import pytest

from cubegirth.actions import tree_action
from cubegirth.halfspaces import Halfspace
from cubegirth.lazy import FreeProductTree
from cubegirth.pingpong import (
    Attractor,
    YHalfspace,
    action_from_spec,
    build_cert_from_poles,
    cert_from_json,
    cert_to_json,
    check_free_cert,
    check_girth_cert,
    free_sanity,
    verify_dagger,
)
from oracles import ball_words, free_reduce

F2 = FreeProductTree([0, 0])
ACT = tree_action(F2)
HA, HB = YHalfspace(0, Halfspace(F2, "", "a")), YHalfspace(0, Halfspace(F2, "", "b"))
R = 18


@pytest.fixture(scope="module")
def cert():
    c = build_cert_from_poles(ACT, "a", "b", ["a", "b"], ([HA], [HB]), radius=R)
    assert c is not None
    return c


def classical(letter):
    P = YHalfspace(0, Halfspace(F2, "", letter))
    Nn = YHalfspace(0, Halfspace(F2, "", letter.upper()))
    return Attractor(((P, Nn),))


def test_classical_free_certificate():
    assert check_free_cert(ACT, "a", "b", classical("a"), classical("b"), "", radius=10).passed
    assert not check_free_cert(ACT, "a", "a", classical("a"), classical("a"), "", radius=10).passed
    assert not check_free_cert(ACT, "a", "b", classical("a"), classical("b"), "a", radius=10).passed


# -- brute force search over a materialised ball ---------------------------------------


def brute_first_NM(n_max=4, m_max=8, radius=8):
    """Smallest (N, M) for which every ping-pong condition holds on the ball.

    Attractor for letter c at depth N: words starting with c^(N+1) or C^N.
    """
    ball = ball_words("ab", radius)
    inner = [w for w in ball if len(w) <= radius - 2]

    def U(c, N):
        return lambda w: w.startswith(c * (N + 1)) or w.startswith(c.upper() * N)

    def translate(g, pred):
        gi = free_reduce(g[::-1].swapcase())
        return lambda w: pred(free_reduce(gi + w))

    def disjoint(p, q, pts):
        return not any(p(w) and q(w) for w in pts)

    for N in range(1, n_max + 1):
        Ua, Ub = U("a", N), U("b", N)
        srcs_a = [Ua] + [translate(g, Ua) for g in "abAB"]
        srcs_b = [Ub] + [translate(g, Ub) for g in "abAB"]
        if not all(disjoint(s, Ub, inner) for s in srcs_a) or not all(disjoint(s, Ua, inner) for s in srcs_b):
            continue
        x = next(w for w in ball if not any(s(w) for s in srcs_a + srcs_b))
        for M in range(1, m_max + 1):
            ok = True
            for c, Uc in (("a", Ua), ("b", Ub)):
                P = lambda w, c=c: w.startswith(c * (N + 1))
                Nn = lambda w, c=c: w.startswith(c.upper() * N)
                pts = [w for w in ball if len(w) <= radius - M]
                fwd, back = c * M, c.upper() * M
                # s.(Y - Nn) inside P and s^-1.(Y - P) inside Nn, on the ball
                if any(not Nn(w) and not P(free_reduce(fwd + w)) for w in pts):
                    ok = False
                if any(not P(w) and not Nn(free_reduce(back + w)) for w in pts):
                    ok = False
            if ok:
                return N, M, x
    return None


def test_builder_agrees_with_brute_force(cert):
    N, M, x = brute_first_NM()
    assert (cert.N, cert.M) == (N, M)
    assert cert.sigma == "a" * M and cert.tau == "b" * M
    assert cert.x == (0, x)


def test_certificate_passes_and_replays(cert):
    v = check_girth_cert(cert, ACT, K=3, radius=R)
    assert v.passed
    assert any("replayed" in n for n in v.notes)
    assert check_girth_cert(cert, ACT, K=4, radius=R + 2, replay=False).passed


def test_small_radius_is_never_a_pass(cert):
    assert check_girth_cert(cert, ACT, K=3, radius=12).status == "inconclusive"


def test_swapped_certificate(cert):
    assert check_girth_cert(cert.swapped(), ACT, radius=R).passed


@pytest.mark.parametrize("mutate", [
    lambda c: dataclasses.replace(c, x=(0, "aaa")),
    lambda c: dataclasses.replace(c, gens=c.gens + ("aa",)),
    lambda c: dataclasses.replace(c, sigma=""),
    lambda c: dataclasses.replace(c, sigma="aa"),
])
def test_mutations_never_pass(cert, mutate):
    assert check_girth_cert(mutate(cert), ACT, radius=R).status != "pass"


def test_no_fixed_points_for_random_words(cert):
    assert free_sanity(ACT, cert, trials=300, seed=1) == 0


def test_dagger_chains():
    ok = verify_dagger(ACT, "aa", ["a", "b"], [HA], 3)
    assert len(ok) == 10 and ok.ok
    assert not verify_dagger(ACT, "a", ["a", "b"], [HA], 3).ok
    assert len(verify_dagger(ACT, "aa", [], [HA], 3)) == 2


def test_builder_rejects_non_skewering_pole():
    with pytest.raises(ValueError):
        build_cert_from_poles(ACT, "b", "b", ["a"], ([HA], [HB]), radius=R)


def test_json_roundtrip(cert):
    spec = {"kind": "tree", "orders": [0, 0]}
    data = json.loads(json.dumps(cert_to_json(cert, spec)))
    back, act = cert_from_json(data)
    assert cert_to_json(back, spec) == data
    assert check_girth_cert(back, act, radius=R).passed


def test_product_action_certificate():
    spec = {"kind": "tree-product", "orders": [0, 0], "relabel": [{}, {"a": "b", "b": "a"}]}
    act = action_from_spec(spec)
    hs_s = [YHalfspace(0, Halfspace(act.space.factors[0], "", "a")), YHalfspace(1, Halfspace(act.space.factors[1], "", "b"))]
    hs_t = [YHalfspace(0, Halfspace(act.space.factors[0], "", "b")), YHalfspace(1, Halfspace(act.space.factors[1], "", "a"))]
    c = build_cert_from_poles(act, "a", "b", ["a", "b"], (hs_s, hs_t), radius=R)
    assert c is not None and (c.N, c.M) == (2, 4)
    assert check_girth_cert(c, act, radius=R).passed
    assert free_sanity(act, c, trials=200) == 0
