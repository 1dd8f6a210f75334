use lba_core::constructions::{catalog, gm_direct, u_n_restricted, ScalarExtension};
use lba_core::semifield::{
    apply_isotopism, dickson, field_semifield, is_lie_isomorphism, lie_iso_from_isotopism, lie_of, verify_isotopism,
    Isotopism,
};
use lba_core::{Elem, Enumeration, FieldTower, Gf, LieAlgebra, Matrix, Subspace};
use proptest::prelude::*;

const ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 25];

fn field(idx: usize) -> Gf {
    FieldTower::for_order(ORDERS[idx % ORDERS.len()]).unwrap().top().clone()
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (Gf, Vec<Elem>)> {
    (0..ORDERS.len()).prop_flat_map(move |i| {
        let f = field(i);
        let size = f.size();
        (Just(f), proptest::collection::vec(0..size, n))
    })
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = (Gf, usize, usize, Vec<Elem>)> {
    (0..ORDERS.len(), 1..=max, 1..=max).prop_flat_map(|(i, r, c)| {
        let f = field(i);
        let size = f.size();
        (Just(f), Just(r), Just(c), proptest::collection::vec(0..size, r * c))
    })
}

fn small_algebras() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = catalog(3).unwrap().into_iter().map(|e| e.algebra).collect();
    out.push(gm_direct(&ScalarExtension::new(5, 1).unwrap()).unwrap());
    out.push(u_n_restricted(3, &ScalarExtension::new(9, 1).unwrap()).unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, (f.size() - 1) as u64), 1);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field((f, v) in field_and_elems(2)) {
        let (a, b) = (v[0], v[1]);
        prop_assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
        prop_assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
        prop_assert_eq!(f.frob(a, 1) == a, a < f.p());
        prop_assert_eq!(f.frob(a, f.prime_degree() as u32), a);
    }

    #[test]
    fn prime_coordinates_round_trip((f, v) in field_and_elems(1)) {
        let c: Vec<u64> = f.prime_coordinates(v[0]).into_iter().map(u64::from).collect();
        prop_assert_eq!(f.from_prime_coordinates(&c).unwrap(), v[0]);
    }

    #[test]
    fn rank_nullity((f, r, c, data) in matrix_strategy(6)) {
        let m = Matrix::from_data(&f, r, c, data).unwrap();
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), c);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent((f, r, c, data) in matrix_strategy(6)) {
        let m = Matrix::from_data(&f, r, c, data).unwrap();
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn subspace_dimension_formula((f, r, c, data) in matrix_strategy(5), split in 0usize..5) {
        let rows: Vec<Vec<Elem>> = data.chunks(c).map(|x| x.to_vec()).collect();
        let cut = split.min(r);
        let u = Subspace::span(&f, c, &rows[..cut]).unwrap();
        let w = Subspace::span(&f, c, &rows[cut..]).unwrap();
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains(&u).unwrap() && u.contains(&meet).unwrap() && w.contains(&meet).unwrap());
    }

    #[test]
    fn breadth_invariants(which in 0usize..64, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let f = l.field().clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Elem> = (0..l.dim()).map(|_| rng.gen_range(0..f.size())).collect();
        let b = l.breadth(&x).unwrap();
        prop_assert_eq!(b, l.dim() - l.centralizer(&x).unwrap().dim());
        prop_assert_eq!(b, l.ad(&x).unwrap().rank());
        let lambda = rng.gen_range(1..f.size());
        let mut y: Vec<Elem> = x.iter().map(|&v| f.mul(lambda, v)).collect();
        for z in l.center().basis_vectors() {
            let s = rng.gen_range(0..f.size());
            for (yi, zi) in y.iter_mut().zip(z) {
                *yi = f.add(*yi, f.mul(s, zi));
            }
        }
        prop_assert_eq!(l.breadth(&y).unwrap(), b);
        prop_assert!(b <= l.derived().dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn isotopic_presemifields_give_isomorphic_algebras(seed in any::<u64>(), use_dickson in any::<bool>()) {
        let sf = if use_dickson {
            dickson(&FieldTower::for_order(9).unwrap(), 1, None).unwrap().semifield().clone()
        } else {
            field_semifield(&FieldTower::prime(5).unwrap(), 2).unwrap()
        };
        let pre = sf.pre();
        let (f, n) = (pre.field(), pre.n());
        let iso = Isotopism {
            a: Matrix::random_invertible(f, n, seed),
            b: Matrix::random_invertible(f, n, seed.wrapping_add(1)),
            c: Matrix::random_invertible(f, n, seed.wrapping_add(2)),
        };
        let image = apply_isotopism(pre, &iso).unwrap();
        prop_assert!(verify_isotopism(pre, &image, &iso));
        let (map, ok) = lie_iso_from_isotopism(pre, &image, &iso).unwrap();
        prop_assert!(ok);
        prop_assert!(is_lie_isomorphism(&lie_of(pre), &lie_of(&image), &map));
    }

    #[test]
    fn reports_do_not_depend_on_workers(which in 0usize..64, workers in 2usize..6) {
        let algs = small_algebras();
        let l = &algs[which % algs.len()];
        let one = Enumeration::default().with_workers(1);
        let many = Enumeration::default().with_workers(workers);
        prop_assert_eq!(l.breadth_report(&one).ok(), l.breadth_report(&many).ok());
        prop_assert_eq!(l.is_camina(&one).ok(), l.is_camina(&many).ok());
        prop_assert_eq!(l.fingerprint(&one).ok(), l.fingerprint(&many).ok());
    }
}
