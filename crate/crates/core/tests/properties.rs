use brauer_core::cli::{Cache, CacheKey};
use brauer_core::gf::{factor_poly, is_irreducible, make_field, Fe, Poly};
use brauer_core::groups::Group;
use brauer_core::topo::{homology, order_complex, smith_decomposition, IntMatrix, Poset};
use proptest::prelude::*;

const FIELDS: [(u32, u32); 6] = [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2), (2, 4)];

fn field_and_elements() -> impl Strategy<Value = ((u32, u32), [u32; 3])> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, m) = FIELDS[i];
        let size = p.pow(m);
        (Just((p, m)), [0..size, 0..size, 0..size])
    })
}

proptest! {
    #[test]
    fn field_axioms(((p, m), [a, b, c]) in field_and_elements()) {
        let f = make_field(p, m).unwrap();
        let (a, b, c) = (Fe(a), Fe(b), Fe(c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.from_int(1));
        }
    }

    #[test]
    fn factorization_multiplies_back(((p, m), _) in field_and_elements(), coeffs in prop::collection::vec(0u32..49, 1..7)) {
        let f = make_field(p, m).unwrap();
        let mut cs: Vec<Fe> = coeffs.iter().map(|&c| Fe(c % f.size())).collect();
        cs.push(f.from_int(1));
        let poly = Poly::new(cs);
        let factors = factor_poly(&f, &poly).unwrap();
        let mut prod = Poly::one();
        for (g, e) in &factors {
            prop_assert!(is_irreducible(&f, g));
            for _ in 0..*e {
                prod = prod.mul(&f, g);
            }
        }
        prop_assert_eq!(prod, poly);
    }
}

/// Exact determinant by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7)
        .prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-20i64..=20, n), m))
}

proptest! {
    #[test]
    fn smith_form_is_a_divisor_chain(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let d = smith_decomposition(&a).unwrap();
        d.verify(&a).unwrap();
        let f = d.invariant_factors();
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(d.rank() <= rows.len().min(rows[0].len()));
    }

    #[test]
    fn square_smith_form_matches_determinant(n in 1usize..7, seed in prop::collection::vec(-9i64..=9, 36)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        let det = bareiss(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        let d = smith_decomposition(&IntMatrix::from_rows(&rows)).unwrap();
        if det == 0 {
            prop_assert!(d.rank() < n);
        } else {
            prop_assert_eq!(d.rank(), n);
            let prod: u128 = d.invariant_factors().iter().map(|&x| x as u128).product();
            prop_assert_eq!(prod, det.unsigned_abs());
        }
    }
}

/// A random partial order on `n` points, closed under transitivity.
fn poset() -> impl Strategy<Value = Poset> {
    (1usize..7)
        .prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n))
        .prop_map(|bits| {
            let n = (bits.len() as f64).sqrt() as usize;
            let mut le = vec![vec![false; n]; n];
            for i in 0..n {
                le[i][i] = true;
                for j in i + 1..n {
                    le[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            Poset::from_relation((0..n).map(|i| format!("x{i}")).collect(), |i, j| le[i][j])
        })
}

fn with_top(p: &Poset) -> Poset {
    let n = p.len();
    let mut labels = p.labels().to_vec();
    labels.push("top".into());
    Poset::from_relation(labels, |i, j| j == n || (i < n && j < n && p.le(i, j)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cones_are_acyclic(p in poset()) {
        p.check_axioms().unwrap();
        let h = homology(&order_complex(&with_top(&p)), true).unwrap();
        prop_assert!(h.is_zero(), "{}", h);
    }

    #[test]
    fn opposite_has_the_same_homology(p in poset()) {
        let a = homology(&order_complex(&p), true).unwrap();
        let b = homology(&order_complex(&p.opposite()), true).unwrap();
        prop_assert!(a.same_groups(&b));
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(p in poset()) {
        let cx = order_complex(&p);
        let h = homology(&cx, false).unwrap();
        let alt: i64 = h.groups.iter().map(|g| if g.degree % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
        prop_assert_eq!(alt, cx.euler_characteristic());
    }
}

const GROUPS: [&str; 6] = [
    "kind=cyclic,n=6",
    "kind=dihedral,n=5",
    "kind=symmetric,n=4",
    "kind=alternating,n=5",
    "kind=SL,n=2,q=3",
    "kind=product,factors=(kind=cyclic,n=2);(kind=symmetric,n=3)",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(i in 0..GROUPS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>(), e in -7i64..8) {
        let g = Group::parse(GROUPS[i], 10_000).unwrap();
        let n = g.order() as u32;
        let (a, b, c) = (x % n, y % n, z % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), a), a);
        prop_assert_eq!(g.pow(a, g.elem_order(a) as i64), g.identity());
        prop_assert_eq!(g.mul(g.pow(a, e), g.pow(a, -e)), g.identity());
        prop_assert_eq!(g.conj(g.mul(a, b), c), g.mul(g.conj(a, c), g.conj(b, c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cache_round_trips_bytes(payload in ".*", name in "[a-z]{1,8}", value in ".*") {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new([(name.as_str(), value.clone())]);
        prop_assert_eq!(key.digest(), CacheKey::new([(name.as_str(), value)]).digest());
        cache.store_bytes(&key, payload.clone()).unwrap();
        prop_assert_eq!(cache.load_bytes(&key), Some(payload));
    }
}
