"""Kummer class spaces: dimensions, homomorphy, and round trips."""

import random
from functools import lru_cache

from isodescent.numfield.field import cached_field
from isodescent.kummer import kummer_classes


@lru_cache(maxsize=None)
def quintic_classes():
    K = cached_field((-2, 0, 0, 0, 0, 1))
    return K, kummer_classes(K, [2, 3, 5, 13], 5)


def test_quintic_dimension():
    _, V = quintic_classes()
    assert V.dim == 5


def test_rational_classes_die():
    K, V = quintic_classes()
    for r in (2, 3, 5, 13, 6, 65, -10):
        assert V.class_of(K.from_rational(r)) == V.zero()


def test_unit_anchor_class_nontrivial():
    K, V = quintic_classes()
    th = K.gen
    alpha = K.sub(K.add(K.pow(th, 3), K.pow(th, 2)), K.one)
    c = V.class_of(alpha)
    assert c is not None and c != V.zero()
    # its fifth power is trivial, earlier powers are not
    for k in range(1, 5):
        ck = V.class_of(K.pow(alpha, k))
        assert ck == tuple(k * v % 5 for v in c)
        assert ck != V.zero()
    assert V.class_of(K.pow(alpha, 5)) == V.zero()


def test_class_map_is_homomorphic():
    K, V = quintic_classes()
    rng = random.Random(5)
    for _ in range(4):
        a = tuple(rng.randrange(5) for _ in range(V.dim))
        b = tuple(rng.randrange(5) for _ in range(V.dim))
        x, y = V.element(a), V.element(b)
        assert V.class_of(K.mul(x, y)) == tuple((u + v) % 5 for u, v in zip(a, b))


def test_lift_reduce_roundtrip():
    _, V = quintic_classes()
    rng = random.Random(17)
    for _ in range(5):
        q = tuple(rng.randrange(5) for _ in range(V.dim))
        assert V.reduce(V.lift(q)) == q


def test_off_s_unit_is_rejected():
    K, V = quintic_classes()
    assert V.class_of(K.add(K.gen, K.from_rational(3))) is None


def test_septic_dimension_and_roundtrip():
    K = cached_field((-3, 0, 0, 0, 0, 0, 0, 1))
    V = kummer_classes(K, [2, 3, 5, 7, 41], 7)
    assert V.dim == 10
    rng = random.Random(23)
    q = tuple(rng.randrange(7) for _ in range(V.dim))
    assert V.class_of(V.element(q)) == q
    assert V.class_of(K.from_rational(41)) == V.zero()
