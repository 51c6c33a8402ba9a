//! Sweep of the constructive tree algorithm: every realizable zero-sum
//! tuple with positive-part sum at most 12 must build a tree whose signed
//! valencies are exactly the tuple, with the entry gcd dividing every
//! edge weight, and whose strand expansion satisfies the face condition.

use defdatum::dessins::{build_tree, combinatorial_type_m1, tree_to_generating_system, CycleType};
use defdatum::types::{realizable, LiftedType};

fn partitions(total: u64) -> Vec<Vec<u64>> {
    fn rec(rem: u64, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 0 {
            out.push(current.clone());
            return;
        }
        let mut part = rem.min(max);
        while part >= 1 {
            current.push(part);
            rec(rem - part, part, current, out);
            current.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

#[test]
fn every_realizable_tuple_up_to_12_builds() {
    let mut built = 0u64;
    let mut rejected = 0u64;
    for n in 1..=12u64 {
        let parts = partitions(n);
        for pos in &parts {
            for neg in &parts {
                // Canonical order and an interleaved order; the algorithm
                // must not depend on where the signs sit.
                let mut canonical: Vec<i64> = pos.iter().map(|&v| v as i64).collect();
                canonical.extend(neg.iter().map(|&v| -(v as i64)));
                let mut interleaved = Vec::new();
                let mut i = 0;
                while i < pos.len() || i < neg.len() {
                    if i < neg.len() {
                        interleaved.push(-(neg[i] as i64));
                    }
                    if i < pos.len() {
                        interleaved.push(pos[i] as i64);
                    }
                    i += 1;
                }
                for entries in [canonical, interleaved] {
                    let a = LiftedType::new(entries.clone()).unwrap();
                    if a.len() < 2 || !realizable(&a).unwrap() {
                        rejected += 1;
                        assert!(build_tree(&a).is_err());
                        continue;
                    }
                    let tree = build_tree(&a)
                        .unwrap_or_else(|e| panic!("build failed for {entries:?}: {e}"));
                    assert_eq!(
                        tree.signed_valencies(),
                        entries,
                        "valencies for {entries:?}"
                    );
                    let (_, k) = a.stats();
                    for edge in tree.edges() {
                        assert_eq!(
                            edge.weight % k,
                            0,
                            "gcd {k} does not divide weight {} in {entries:?}",
                            edge.weight
                        );
                    }
                    let system = tree_to_generating_system(&tree)
                        .unwrap_or_else(|e| panic!("conversion failed for {entries:?}: {e}"));
                    let ct = system.combinatorial_type();
                    assert_eq!(ct.genus(), Ok(0));
                    let expected_c2 =
                        CycleType::with_degree(vec![a.len() as u64 - 1], ct.n).unwrap();
                    assert_eq!(system.sigma2.cycle_type(), expected_c2);
                    assert_eq!(ct, combinatorial_type_m1(&a).unwrap());
                    built += 1;
                }
            }
        }
    }
    assert!(
        built > 5_000,
        "sweep must cover a substantial range, got {built}"
    );
    println!("built {built} trees, rejected {rejected} unrealizable tuples");
}
