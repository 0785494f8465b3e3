use grand_core::codes::{
    build_capolar_code, build_crc_code, capolar_128_112, crc_128_112, nr_reliability, polar_transform,
};
use grand_core::gf2::{gf2_solve, BitMatrix, BitVector, Gf2Solution};
use proptest::prelude::*;

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    prop::collection::vec(0u8..2, len).prop_map(|b| BitVector::from_bits(&b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crc_codewords_are_closed_under_xor(a in bits(112), b in bits(112)) {
        let code = crc_128_112();
        let mut x = code.encode(&a).unwrap();
        let y = code.encode(&b).unwrap();
        x.xor_assign(&y);
        prop_assert!(code.is_codeword(&x));
        let mut m = a.clone();
        m.xor_assign(&b);
        prop_assert_eq!(x, code.encode(&m).unwrap());
    }

    #[test]
    fn capolar_round_trips(m in bits(101)) {
        let code = capolar_128_112();
        let w = code.encode(&m).unwrap();
        prop_assert!(code.is_codeword(&w));
        prop_assert_eq!(code.extract_message(&w), m);
    }

    #[test]
    fn polar_transform_is_involution(x in bits(128)) {
        let mut y = x.clone();
        polar_transform(&mut y);
        polar_transform(&mut y);
        prop_assert_eq!(y, x);
    }

    #[test]
    fn unique_solutions_satisfy_the_system(rows in prop::collection::vec(bits(12), 16), x in bits(12)) {
        let a = BitMatrix::from_rows(12, &rows);
        let b = a.mul_vec(&x);
        match gf2_solve(&a, &b).unwrap() {
            Gf2Solution::Unique(sol) => {
                prop_assert_eq!(a.rank(), 12);
                prop_assert_eq!(a.mul_vec(&sol), b);
            }
            Gf2Solution::Underdetermined { free_rank } => prop_assert_eq!(free_rank, 12 - a.rank()),
            Gf2Solution::Inconsistent => prop_assert!(false, "system built from a solution"),
        }
    }

    #[test]
    fn rank_plus_nullity_is_width(rows in prop::collection::vec(bits(20), 1..24)) {
        let a = BitMatrix::from_rows(20, &rows);
        let ns = a.null_space();
        prop_assert_eq!(a.rank() + ns.rows(), 20);
        prop_assert!(a.mul_transpose(&ns).is_zero());
    }
}

#[test]
fn generator_and_parity_check_are_orthogonal_full_rank() {
    let codes = [
        build_crc_code(7, 4, 0b1011).unwrap(),
        build_crc_code(8, 4, 0b10011).unwrap(),
        build_crc_code(32, 26, 0b1000011).unwrap(),
        crc_128_112(),
        build_capolar_code(32, 26, 6, 0b1000011, &nr_reliability(32).unwrap()).unwrap(),
        capolar_128_112(),
    ];
    for code in &codes {
        let g = code.generator();
        let h = code.parity_check();
        assert_eq!(g.rank(), code.message_len());
        assert_eq!(h.rank(), code.n() - code.message_len());
        assert!(g.mul_transpose(h).is_zero());
        for r in 0..g.rows() {
            assert!(code.is_codeword(&g.row_vector(r)));
        }
    }
}
