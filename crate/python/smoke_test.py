"""Smoke test for the pydiagset extension. Run after `maturin develop` or installing the wheel."""

import pathlib
import xml.dom.minidom

import pydiagset as ds

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "corpus"


def shapes():
    whisker = ds.Molecule("paste(binary, arrow, 0)")
    assert whisker.size == [4, 4, 1], whisker.size
    assert len(whisker) == 9
    assert whisker.dim == 2 and not whisker.is_round() and not whisker.is_atom()
    assert ds.Molecule.binary().is_round() and ds.Molecule.binary().is_atom()
    assert whisker == ds.Molecule.binary().paste(ds.Molecule.arrow(), 0)
    assert ds.Molecule.from_json(whisker.to_json()) == whisker
    assert whisker.input().size == [4, 3]
    assert whisker.boundary("+", 0) == ds.Molecule.point()
    left = ds.Molecule("(globe *0 arrow) *1 (arrow *0 globe)")
    assert left.isomorphic(ds.Molecule("globe *0 globe"))
    assert not left.isomorphic(whisker)
    assert len({whisker, ds.Molecule("paste(binary, arrow, 0)")}) == 1
    try:
        ds.Molecule.arrow().paste(ds.Molecule.globe(), 1)
    except ds.ShapeError:
        pass
    else:
        raise AssertionError("pasting an arrow onto a globe along 1 should fail")


def complexes():
    sigma, names = ds.load((CORPUS / "lunital.dg").read_text())
    assert sigma.names() == ["x", "a", "m", "u", "lu"], sigma.names()
    lu = names["lu"]
    assert lu.dim == 3 and lu.is_cell()
    assert lu.labels[3] == ["lu"]
    assert sigma["a"].unit().dim == 2
    assert lu.output() == sigma["a"].lunitor()

    tikz = lu.render()
    assert tikz.startswith("\\begin{tikzpicture}"), tikz[:40]
    svg = lu.input().render(view="string", format="svg", bg="gray!10")
    xml.dom.minidom.parseString(svg)
    assert 'fill="#f2f2f2"' in svg
    try:
        lu.render(view="string")
    except ds.RenderError:
        pass
    else:
        raise AssertionError("a 3-dimensional string diagram should be refused")

    again = ds.DiagSet.decode(sigma.encode())
    assert again.names() == sigma.names()

    built = ds.DiagSet()
    x = built.add("x")
    a = built.add("a", x, x)
    built.add("e", a, a)
    assert len(built) == 3 and "e" in built
    for bad in (lambda: built.add("x"), lambda: built.add("f", a, a.unit())):
        try:
            bad()
        except ds.KernelError:
            pass
        else:
            raise AssertionError("expected a kernel error")

    try:
        ds.load("gen a : x =>\n")
    except ds.DslError as e:
        assert str(e).startswith("1:"), str(e)
    else:
        raise AssertionError("expected a parse error")
    assert issubclass(ds.DslError, ValueError)


if __name__ == "__main__":
    shapes()
    complexes()
    print("smoke test passed")
