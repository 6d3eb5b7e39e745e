use diagset::kernel::{decode, encode, DiagSet, Diagram, KernelError, Morphism};
use diagset::molecule::{unit_collapse, Molecule, Side};
use diagset::ogposet::{El, Sign};

struct Lun {
    ds: DiagSet,
    x: Diagram,
    a: Diagram,
    m: Diagram,
    u: Diagram,
    lu: Diagram,
}

fn lun() -> Lun {
    let mut ds = DiagSet::new();
    let x = ds.add_point("x").unwrap();
    let a = ds.add_gen("a", &x, &x).unwrap();
    let m = ds.add_gen("m", &a.paste(&a, 0).unwrap(), &a).unwrap();
    let u = ds.add_gen("u", &x.unit().unwrap(), &a).unwrap();
    let input = u.paste(&a, 0).unwrap().paste(&m, 1).unwrap();
    let lu = ds.add_gen("lu", &input, &a.lunitor().unwrap()).unwrap();
    Lun { ds, x, a, m, u, lu }
}

fn names(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[test]
fn lunital_complex() {
    let l = lun();
    assert_eq!(l.x.shape(), &Molecule::point());
    assert_eq!(l.a.shape(), &Molecule::arrow());
    assert_eq!(l.m.shape(), &Molecule::binary());
    assert_eq!(l.u.shape(), &Molecule::globe());
    assert_eq!(l.lu.shape().size(), vec![3, 4, 3, 1]);
    assert!(l.lu.is_cell());
    // the labelled Hasse diagram of lu, row by row
    assert_eq!(l.lu.label_names(), names(&[&["x", "x", "x"], &["x", "a", "a", "a"], &["u", "m", "a"], &["lu"]]));
    assert_eq!(l.lu.input().label_names(), names(&[&["x", "x", "x"], &["x", "a", "a", "a"], &["u", "m"]]));
    assert_eq!(l.lu.output().label_names(), names(&[&["x", "x", "x"], &["x", "a", "a"], &["a"]]));
    assert_eq!(l.a.label_names(), names(&[&["x", "x"], &["a"]]));
}

#[test]
fn points_are_independent() {
    let mut ds = DiagSet::new();
    let x = ds.add_point("x").unwrap();
    let y = ds.add_point("y").unwrap();
    assert_ne!(x, y);
    assert_eq!(ds.add_point("x").unwrap_err(), KernelError::DuplicateName("x".into()));
    let a = ds.add_gen("a", &x, &y).unwrap();
    assert!(matches!(ds.add_gen("a", &x, &y), Err(KernelError::DuplicateName(_))));
    // a: x ⇒ y cannot be composed with itself
    assert!(matches!(a.paste(&a, 0), Err(KernelError::TypeMismatch(_))));
}

#[test]
fn add_gen_checks_types() {
    let mut l = lun();
    let err = l.ds.add_gen("bad", &l.a, &l.m).unwrap_err();
    assert!(matches!(err, KernelError::TypeMismatch(_)), "{err}");
    let aa = l.a.paste(&l.a, 0).unwrap();
    let err = l.ds.add_gen("bad", &aa, &l.m).unwrap_err();
    assert!(matches!(err, KernelError::TypeMismatch(_)), "{err}");
    // m and u have different inputs
    let err = l.ds.add_gen("bad", &l.m, &l.u).unwrap_err();
    assert!(matches!(err, KernelError::TypeMismatch(_)), "{err}");
    let mut ds = DiagSet::new();
    let x = ds.add_point("x").unwrap();
    let y = ds.add_point("y").unwrap();
    let f = ds.add_gen("f", &x, &y).unwrap();
    let g = ds.add_gen("g", &y, &x).unwrap();
    let loop_ = f.paste(&g, 0).unwrap();
    let unit = x.unit().unwrap();
    let h = ds.add_gen("h", &loop_, &unit).unwrap();
    // whiskered 2-cells are not round
    let whisker = h.paste(&f, 0).unwrap();
    let err = ds.add_gen("bad", &whisker, &whisker).unwrap_err();
    assert!(matches!(err, KernelError::NotRound(_)), "{err}");
}

#[test]
fn pullbacks() {
    let l = lun();
    assert_eq!(l.m.pullback(&l.m.shape().identity()).unwrap(), l.m);
    let tau = unit_collapse(&Molecule::point()).unwrap();
    let unit = l.x.pullback(&tau).unwrap();
    assert_eq!(unit, l.x.unit().unwrap());
    assert_eq!(unit.shape(), &Molecule::arrow());
    assert_eq!(unit.label_names(), names(&[&["x", "x"], &["x"]]));
    let inclusion = l.m.shape().boundary_inclusion(Sign::Input, 1);
    assert_eq!(l.m.pullback(&inclusion).unwrap(), l.m.input());
    assert!(matches!(l.a.pullback(&inclusion), Err(KernelError::ShapeMismatch(_))));
}

#[test]
fn pasting_transports_labels() {
    let l = lun();
    let aa = l.a.paste(&l.a, 0).unwrap();
    assert_eq!(aa.shape(), &Molecule::paste(&Molecule::arrow(), &Molecule::arrow(), 0).unwrap());
    assert_eq!(aa.label_names(), names(&[&["x", "x", "x"], &["a", "a"]]));
    assert_eq!(aa, l.a.paste_default(&l.a).unwrap());
    assert!(matches!(l.a.paste(&l.a, 1), Err(KernelError::DimensionError { .. })));
    let mut other = DiagSet::new();
    let y = other.add_point("x").unwrap();
    let b = other.add_gen("a", &y, &y).unwrap();
    assert_eq!(b, l.a);
    assert_eq!(l.a.paste(&b, 0).unwrap_err(), KernelError::AmbientMismatch);
}

#[test]
fn boundaries() {
    let l = lun();
    assert_eq!(l.m.input(), l.a.paste(&l.a, 0).unwrap());
    assert_eq!(l.m.output(), l.a);
    let input = l.lu.input();
    assert_eq!(input.boundary(Sign::Input, 0), l.x);
    assert_eq!(input.boundary(Sign::Output, 1), l.a);
    assert_eq!(input.boundary(Sign::Input, 1), l.x.unit().unwrap().paste(&l.a, 0).unwrap());
    let empty = l.x.boundary(Sign::Input, -1);
    assert!(empty.shape().is_empty());
    assert_eq!(empty.dim(), -1);
    assert!(l.x.type_of().is_none());
}

#[test]
fn units_and_unitors() {
    let l = lun();
    let unit = l.m.unit().unwrap();
    assert_eq!(unit.type_of().unwrap(), (l.m.clone(), l.m.clone()));
    let lunitor = l.a.lunitor().unwrap();
    assert_eq!(lunitor.shape(), &Molecule::binary());
    assert_eq!(lunitor.input(), l.x.unit().unwrap().paste(&l.a, 0).unwrap());
    assert_eq!(lunitor.output(), l.a);
    assert!(lunitor.shape().poset().elements().filter(|e| e.dim == 2).all(|e| lunitor.is_degenerate(e)));
    let runitor = l.a.runitor().unwrap();
    assert_eq!(runitor.input(), l.a.paste(&l.x.unit().unwrap(), 0).unwrap());
    let aa = l.a.paste(&l.a, 0).unwrap();
    assert!(matches!(aa.unit(), Err(KernelError::Unsupported(_))));
    assert!(matches!(l.x.lunitor(), Err(KernelError::Unsupported(_))));
}

#[test]
fn rewriting_in_context() {
    let l = lun();
    let c = l.u.paste(&l.a, 0).unwrap().paste(&l.m, 1).unwrap();
    let context = c.paste(&l.a, 0).unwrap();
    // the 2-cells u and m of c inside the larger diagram
    let positions: Vec<usize> = (0..context.shape().size()[2])
        .filter(|&p| ["u", "m"].contains(&context.label(El::new(2, p)).name()))
        .collect();
    assert_eq!(positions.len(), 2);
    let rewrite = context.paste_along(&positions, &l.lu, Side::Outputs, Some(2)).unwrap();
    assert_eq!(rewrite.dim(), 3);
    assert_eq!(rewrite.input(), context);
    assert_eq!(rewrite.output(), l.a.lunitor().unwrap().paste(&l.a, 0).unwrap());
    // the output arrow of m is its whole output 1-boundary
    let out = l.m.shape().poset().whole().boundary(Some(Sign::Output), Some(1)).into_support();
    let out = out.stratum(1).to_vec();
    let unit_a = l.a.unit().unwrap();
    let along = l.m.paste_along(&out, &unit_a, Side::Outputs, None).unwrap();
    assert_eq!(along, l.m.paste(&unit_a, 1).unwrap());
    let input = l.m.shape().poset().whole().boundary(Some(Sign::Input), Some(1)).into_support();
    let err = l.m.paste_along(&input.stratum(1)[..1], &unit_a, Side::Outputs, None).unwrap_err();
    assert!(matches!(err, KernelError::Shape(_)), "{err}");
}

#[test]
fn paste_along_checks_labels() {
    let mut l = lun();
    let b = l.ds.add_gen("b", &l.x, &l.x).unwrap();
    let out = l.m.shape().poset().whole().boundary(Some(Sign::Output), Some(1)).into_support();
    let err = l.m.paste_along(out.stratum(1), &b.unit().unwrap(), Side::Outputs, None).unwrap_err();
    assert!(matches!(err, KernelError::TypeMismatch(_)), "{err}");
}

#[test]
fn morphisms() {
    let l = lun();
    let id = Morphism::identity(&l.ds);
    for d in [&l.x, &l.a, &l.m, &l.u, &l.lu] {
        assert_eq!(&id.apply(d).unwrap(), d);
    }
    let mut theory = DiagSet::new();
    let y = theory.add_point("y").unwrap();
    let b = theory.add_gen("b", &y, &y).unwrap();
    let bb = b.paste(&b, 0).unwrap();
    let f = Morphism::new(&theory, &l.ds, [("y", l.x.clone()), ("b", l.a.clone())]).unwrap();
    assert_eq!(f.apply(&bb).unwrap(), l.a.paste(&l.a, 0).unwrap());
    let unit = l.x.unit().unwrap();
    let g = Morphism::new(&theory, &l.ds, [("y", l.x.clone()), ("b", unit.clone())]).unwrap();
    assert_eq!(g.apply(&bb).unwrap(), unit.paste(&unit, 0).unwrap());
    assert!(matches!(
        Morphism::new(&theory, &l.ds, [("y", l.x.clone())]),
        Err(KernelError::MissingAssignment(name)) if name == "b"
    ));
    assert!(matches!(
        Morphism::new(&theory, &l.ds, [("y", l.x.clone()), ("b", l.u.clone())]),
        Err(KernelError::TypeMismatch(_))
    ));
    let mut two = DiagSet::new();
    let p = two.add_point("p").unwrap();
    let q = two.add_point("q").unwrap();
    let e = two.add_gen("e", &p, &q).unwrap();
    let h = Morphism::new(&theory, &two, [("y", p.clone()), ("b", e.clone())]);
    assert!(matches!(h, Err(KernelError::TypeMismatch(_))), "{h:?}");
    // composition agrees with applying in sequence
    let back = Morphism::new(&l.ds, &l.ds, l.ds.generators().iter().map(|gen| (gen.name(), gen.cell().clone()))).unwrap();
    let fg = f.then(&back).unwrap();
    assert_eq!(fg.apply(&bb).unwrap(), back.apply(&f.apply(&bb).unwrap()).unwrap());
    assert!(matches!(back.then(&f), Err(KernelError::AmbientMismatch)));
}

#[test]
fn encoding_round_trip() {
    let l = lun();
    let text = encode(&l.ds);
    let lu_line = text.lines().find(|line| line.contains("\"name\":\"lu\"")).unwrap();
    assert!(lu_line.contains(r#""input_labels":[["x","x","x"],["x","a","a","a"],["u","m"]]"#), "{lu_line}");
    assert!(lu_line.contains(r#""output_labels":[["x","x","x"],["x","a","a"],["a"]]"#), "{lu_line}");
    let names: Vec<&str> = l.ds.normalized().iter().map(|g| g.name()).collect();
    assert_eq!(names, ["x", "a", "m", "u", "lu"]);
    let back = decode(&text).unwrap();
    assert_eq!(back, l.ds);
    assert_eq!(encode(&back), text);
}

#[test]
fn decoding_rejects_bad_files() {
    let l = lun();
    let text = encode(&l.ds);
    // records of a and m exchanged: m now mentions a before its declaration
    let mut lines: Vec<&str> = text.lines().collect();
    lines.swap(2, 3);
    let err = decode(&lines.join("\n"));
    assert!(matches!(&err, Err(KernelError::Parse(msg)) if msg.contains("before its declaration")), "{err:?}");
    assert!(matches!(decode("not json"), Err(KernelError::Parse(_))));
    let relabelled = text.replacen(r#"["x","a","a","a"],["u","m"]"#, r#"["x","a","a","a"],["m","u"]"#, 1);
    assert!(decode(&relabelled).is_err());
    let renamed = text.replacen(r#""name":"m""#, r#""name":"x""#, 1);
    assert!(matches!(decode(&renamed), Err(KernelError::DuplicateName(_))));
}

#[test]
fn terms_from_labels() {
    let l = lun();
    let d = l.ds.diagram(l.lu.shape(), &l.lu.label_names()).unwrap();
    assert_eq!(d, l.lu);
    for t in [&l.x, &l.a, &l.m, &l.u, &l.lu, &l.a.lunitor().unwrap(), &l.m.unit().unwrap()] {
        l.ds.check_reconstruction(t).unwrap();
        assert_eq!(&l.ds.diagram(t.shape(), &t.label_names()).unwrap(), t);
    }
    // an arrow labelled m cannot come from the binary cell m
    let bad = l.ds.diagram(&Molecule::arrow(), &names(&[&["x", "x"], &["m"]]));
    assert!(matches!(bad, Err(KernelError::IllFormedTerm(_))));
    let bad = l.ds.diagram(&Molecule::globe(), &names(&[&["x", "x"], &["a", "a"], &["a"]]));
    assert!(bad.is_ok());
    let bad = l.ds.diagram(&Molecule::globe(), &names(&[&["x", "x"], &["x", "a"], &["a"]]));
    assert!(matches!(bad, Err(KernelError::IllFormedTerm(_))));
    let unknown = l.ds.diagram(&Molecule::point(), &names(&[&["nope"]]));
    assert!(matches!(unknown, Err(KernelError::UnknownGenerator(_))));
}
