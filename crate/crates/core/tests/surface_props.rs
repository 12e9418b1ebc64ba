use reidemeister::algebra::{FieldElement, Matrix};
use reidemeister::local::LocalSystem;
use reidemeister::surface::{
    all_spin_structures, arf, intersection_pairing, johnson_q, mod2_intersection, reference_spin, sigma_s,
    sign_vectors, SurfaceModel,
};
use reidemeister::symplectic::pfaffian;

fn bits(a: &[i64]) -> Vec<u8> {
    a.iter().map(|&s| u8::from(s < 0)).collect()
}

fn signs(b: &[u8]) -> Vec<i64> {
    b.iter().map(|&x| if x == 1 { -1 } else { 1 }).collect()
}

fn index_of(b: &[u8]) -> usize {
    b.iter().enumerate().map(|(k, &x)| (x as usize) << k).sum()
}

fn dot(x: &[u8], y: &[u8]) -> u8 {
    mod2_intersection(&signs(x), &signs(y)) as u8
}

/// Generators of `Sp(2g, 𝔽₂)` acting on bit vectors: all transvections and the handle swap.
fn symplectic_moves(g: usize) -> Vec<Box<dyn Fn(&[u8]) -> Vec<u8>>> {
    let mut out: Vec<Box<dyn Fn(&[u8]) -> Vec<u8>>> = Vec::new();
    for v in sign_vectors(2 * g).into_iter().skip(1) {
        let v = bits(&v);
        out.push(Box::new(move |x: &[u8]| {
            let k = dot(x, &v);
            x.iter().zip(&v).map(|(a, b)| a ^ (k & b)).collect()
        }));
    }
    if g >= 2 {
        out.push(Box::new(|x: &[u8]| {
            let mut y = x.to_vec();
            y.rotate_left(2);
            y
        }));
    }
    out
}

fn arf_of_table(q: &[i32]) -> i32 {
    q.iter().sum::<i32>().signum()
}

#[test]
fn sigma_squares_to_one() {
    for g in 1..=2 {
        let m = SurfaceModel::standard(g).unwrap();
        let p = m.complex.presentation().clone();
        let all = all_spin_structures(&m.complex, &reference_spin(&m.complex).unwrap());
        let alphas = sign_vectors(2 * g);
        for s in &all {
            for a in &alphas {
                let la = LocalSystem::mu2(&p, a).unwrap();
                let sg = sigma_s(&m, s, &la).unwrap();
                assert_eq!(sg * sg, 1);
                let sum = la.direct_sum(&LocalSystem::mu2(&p, &alphas[alphas.len() - 1]).unwrap());
                assert!(matches!(sigma_s(&m, s, &sum).unwrap(), 1 | -1));
            }
        }
    }
}

#[test]
fn sigma_is_a_sign_for_rational_rotations() {
    let m = SurfaceModel::standard(1).unwrap();
    let p = m.complex.presentation().clone();
    let rot = Matrix::from_rows(vec![
        vec![FieldElement::rat(3, 5), FieldElement::rat(-4, 5)],
        vec![FieldElement::rat(4, 5), FieldElement::rat(3, 5)],
    ])
    .unwrap();
    let rot2 = rot.mul(&rot).unwrap();
    let id = Matrix::identity(2);
    for s in all_spin_structures(&m.complex, &reference_spin(&m.complex).unwrap()) {
        for mono in [vec![rot.clone(), id.clone()], vec![rot.clone(), rot2.clone()], vec![id.clone(), rot.clone()]] {
            let l = LocalSystem::new(&p, 2, mono).unwrap();
            assert!(matches!(sigma_s(&m, &s, &l).unwrap(), 1 | -1));
        }
    }
}

#[test]
fn arf_is_invariant_under_symplectic_relabeling() {
    for g in 1..=2 {
        let m = SurfaceModel::standard(g).unwrap();
        let all = all_spin_structures(&m.complex, &reference_spin(&m.complex).unwrap());
        let alphas = sign_vectors(2 * g);
        let tables: Vec<Vec<i32>> =
            all.iter().map(|s| alphas.iter().map(|a| johnson_q(&m, s, a).unwrap()).collect()).collect();
        for (s, q) in all.iter().zip(&tables) {
            assert_eq!(arf_of_table(q), arf(&m, s).unwrap());
            for phi in symplectic_moves(g) {
                for x in &alphas {
                    for y in &alphas {
                        assert_eq!(dot(&phi(&bits(x)), &phi(&bits(y))), dot(&bits(x), &bits(y)));
                    }
                }
                let pulled: Vec<i32> = alphas.iter().map(|a| q[index_of(&phi(&bits(a)))]).collect();
                let k = tables.iter().position(|t| *t == pulled).expect("q∘φ is a spin table");
                assert_eq!(arf(&m, &all[k]).unwrap(), arf(&m, s).unwrap());
            }
        }
    }
}

#[test]
fn orientation_matches_trivial_pfaffian() {
    for g in 1..=3 {
        let m = SurfaceModel::standard(g).unwrap();
        let (_, form) = intersection_pairing(&m, &LocalSystem::trivial(m.complex.presentation(), 1)).unwrap();
        assert_eq!(pfaffian(&form).unwrap().sign(), Some(m.orientation.sign), "genus {g}");
    }
}
