import pytest

from hextqft.catalogue import (REGISTRY, UNAVAILABLE, GeneratorError, data_files, data_path,
                               generate, load, resolve)
from hextqft.triangulation import parse_tri


def test_generator_atoms():
    assert generate("boundary-simplex").f_vector == (6, 15, 20, 15, 6)
    assert generate("boundary-simplex3").dim == 2
    assert len(generate("circle5").facets) == 5
    rp2 = generate("rp2")
    assert rp2.f_vector == (6, 15, 10)
    assert rp2.euler_characteristic == 1


def test_products_fold_left():
    t4 = generate("product circle3 circle3 circle3 circle3")
    assert t4.f_vector == (81, 1215, 4050, 4860, 1944)
    nested = generate("product (product rp2 circle3) circle3")
    assert nested == load("rp2xt2")
    assert generate("product boundary-simplex3 boundary-simplex3").name == \
        "product boundary-simplex3 boundary-simplex3"


@pytest.mark.parametrize("bad", ["", "torus", "product circle3", "(circle3", "circle3 )",
                                 "circle2", "product circle3 circle3 )"])
def test_generator_errors(bad):
    with pytest.raises(GeneratorError):
        generate(bad)


def test_every_data_file_has_provenance():
    names = data_files()
    assert {"cp2_9.tri", "rp4.tri", "rp3xs1.tri", "s2_twisted_s2.tri"} <= set(names)
    for n in names:
        text = open(data_path(n), encoding="utf-8").read()
        assert any(line.startswith("# source:") for line in text.splitlines()), n
        t = parse_tri(text)
        assert t.is_closed


def test_registry_load_and_resolve():
    assert load("cp2").name == "cp2"
    assert resolve("data/cp2_9.tri").f_vector == (9, 36, 84, 90, 36)
    assert resolve("cp2") == load("cp2")
    with pytest.raises(KeyError):
        load("klein_bottle")
    with pytest.raises(FileNotFoundError):
        resolve("no/such/file.tri")
    for name in UNAVAILABLE:
        with pytest.raises(FileNotFoundError, match="no triangulation file"):
            load(name)


def test_registry_covers_the_twelve_manifolds():
    assert len(REGISTRY) == 12
