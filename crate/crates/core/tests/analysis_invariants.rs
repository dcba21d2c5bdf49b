mod common;

use common::{dihedral_classes_bruteforce, elements, fixture, involutions, limits};
use polyatlas::GroupAnalysis;

const GROUPS: &[&str] = &["s4", "s5", "a5", "d8", "c2c2c2", "psl27", "s4xc2", "s6"];

#[test]
fn dihedral_reps_match_subgroup_scan() {
    for name in GROUPS {
        let g = fixture(name);
        let a = GroupAnalysis::new(&g, limits()).unwrap();
        let reps = a.dihedral_class_reps().unwrap();
        assert_eq!(reps.len(), dihedral_classes_bruteforce(&g), "{name}");
        for d in &reps {
            assert_eq!(d.subgroup.order(), 2 * d.rotation.order() as u128, "{name}");
            assert!(d.reflection.is_involution());
            assert_eq!(d.reflection.then(&d.rotation).then(&d.reflection), d.rotation.inverse());
        }
    }
}

#[test]
fn s4_dihedral_subgroups() {
    let a = GroupAnalysis::new(&fixture("s4"), limits()).unwrap();
    let mut orders: Vec<u128> = a.dihedral_class_reps().unwrap().iter().map(|d| d.subgroup.order()).collect();
    orders.sort();
    assert_eq!(orders, vec![6, 8]);
}

#[test]
fn involution_classes_partition_the_involutions() {
    for name in GROUPS {
        let g = fixture(name);
        let a = GroupAnalysis::new(&g, limits()).unwrap();
        let inv = involutions(&g);
        assert_eq!(a.involutions(), &inv[..], "{name}");
        let total: usize = a.involution_classes().iter().map(|c| c.len()).sum();
        assert_eq!(total, inv.len(), "{name}");
        for x in &inv {
            let id = a.involution_class_of(x).unwrap();
            let class = &a.involution_classes()[id];
            let y = class.conjugator_to(x, g.generators()).unwrap();
            assert_eq!(class.representative.conjugate_by(&y), *x, "{name}");
            let mut expected: Vec<_> = inv.iter().filter(|z| *z != x && z.commutes_with(x)).cloned().collect();
            expected.sort();
            assert_eq!(a.commuting_involutions(x).unwrap(), expected, "{name}");
        }
    }
}

#[test]
fn class_ids_are_conjugation_invariant() {
    for name in ["s5", "psl27", "s4xc2"] {
        let g = fixture(name);
        let a = GroupAnalysis::new(&g, limits()).unwrap();
        let all = elements(&g);
        for x in all.iter().step_by(7) {
            for s in g.generators() {
                assert_eq!(a.class_id(x), a.class_id(&x.conjugate_by(s)), "{name}");
            }
        }
        let total: usize = a.classes().iter().map(|c| c.size as usize).sum();
        assert_eq!(total, all.len());
    }
}
