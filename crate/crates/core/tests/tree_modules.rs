use thicklat::rep::{FieldRep, TreeModule};
use thicklat::{DynkinType, Error, Field, Fp, Gf2, Gf3, Gf5, Quiver, Rational};

fn check_rigid_brick<F: Field>(m: &TreeModule) {
    let r: FieldRep<F> = m.base_change();
    assert_eq!(
        r.hom_dim(&r).unwrap(),
        1,
        "{:?} over {}",
        m.dim(),
        F::name()
    );
    assert_eq!(
        r.ext_dim(&r).unwrap(),
        0,
        "{:?} over {}",
        m.dim(),
        F::name()
    );
    assert_eq!(r.ext_dim_presentation(&r).unwrap(), 0);
}

#[test]
fn every_root_has_a_rigid_zero_one_lattice() {
    for t in ["A2", "A3", "A4", "D4"] {
        let q = Quiver::standard(t.parse::<DynkinType>().unwrap());
        for alpha in q.indecomposable_dims() {
            let m = TreeModule::new(&q, &alpha).unwrap();
            assert!(m.is_zero_one(), "{t} {alpha:?}");
            assert_eq!(m.dim(), &alpha);
            check_rigid_brick::<Gf2>(&m);
            check_rigid_brick::<Gf3>(&m);
            check_rigid_brick::<Gf5>(&m);
            check_rigid_brick::<Rational>(&m);
        }
    }
}

#[test]
fn other_orientations_and_larger_fields() {
    for (t, o) in [
        ("A4", "2>1,2>3,4>3"),
        ("D4", "2>1,2>3,2>4"),
        ("D5", ""),
        ("E6", ""),
    ] {
        let q = Quiver::parse(t.parse().unwrap(), o).unwrap();
        for alpha in q.indecomposable_dims() {
            let m = TreeModule::new(&q, &alpha).unwrap();
            assert!(m.is_zero_one(), "{t} {o} {alpha:?}");
            check_rigid_brick::<Fp<7>>(&m);
        }
    }
}

#[test]
fn non_roots_are_rejected() {
    let q = Quiver::standard(DynkinType::a(3));
    for bad in [vec![1, 0, 1], vec![0, 0, 0], vec![2, 1, 1], vec![1, 1]] {
        assert_eq!(TreeModule::new(&q, &bad), Err(Error::NotARoot(bad.clone())));
    }
}
