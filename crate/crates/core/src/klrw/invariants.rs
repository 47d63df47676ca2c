//! The action of `S_chi` permuting red strands inside blocks of equal `chi`.

use super::element::AlgebraElement;
use super::problem::Problem;
use super::word::Word;
use crate::error::{Error, Result};
use crate::exact::{rational::ratio, Perm};

/// All permutations of `0..n` preserving each block of equal `chi` entries.
pub fn chi_stabilizer(chi: &[i64]) -> Vec<Perm> {
    let n = chi.len();
    let mut out = vec![Perm::identity(n)];
    for block in super::problem::blocks_of(chi) {
        let idx: Vec<usize> = block.collect();
        let local = Perm::all(idx.len());
        out = out
            .iter()
            .flat_map(|base| {
                let idx = &idx;
                local.iter().map(move |s| {
                    let mut images = base.images().to_vec();
                    for (a, &i) in idx.iter().enumerate() {
                        images[i] = idx[s.image(a)];
                    }
                    Perm::from_images(images).expect("block permutation")
                })
            })
            .collect();
    }
    out
}

/// Strand permutation moving red `j` to the position of red `sigma(j)`.
fn red_relabeling(p: &Problem, w: &Word, sigma: &Perm) -> Perm {
    let reds = w.red_positions(p.m);
    let mut images: Vec<usize> = (0..p.num_strands()).collect();
    for (j, &pos) in reds.iter().enumerate() {
        images[pos] = reds[sigma.image(j)];
    }
    Perm::from_images(images).expect("red relabeling")
}

fn check_parabolic(p: &Problem, a: &AlgebraElement) -> Result<(Word, Word)> {
    let (Some(s), Some(t)) = (a.source(), a.target()) else {
        return Ok((Word::from_letters(&[]), Word::from_letters(&[])));
    };
    for w in [s, t] {
        if !w.is_chi_parabolic(p) {
            return Err(Error::InvalidWord(format!("{w} is not chi-parabolic")));
        }
    }
    Ok((s.clone(), t.clone()))
}

/// `sigma · a` for `sigma` in the stabilizer of `chi`.
pub fn act(p: &Problem, a: &AlgebraElement, sigma: &Perm) -> Result<AlgebraElement> {
    let (s, t) = check_parabolic(p, a)?;
    if a.is_zero() {
        return Ok(a.clone());
    }
    Ok(a.relabeled(&red_relabeling(p, &s, sigma), &red_relabeling(p, &t, sigma)))
}

/// Average over the stabilizer of `chi`.
pub fn symmetrize_red_blocks(p: &Problem, a: &AlgebraElement) -> Result<AlgebraElement> {
    check_parabolic(p, a)?;
    if a.is_zero() {
        return Ok(a.clone());
    }
    let group = chi_stabilizer(&p.chi);
    let mut acc = AlgebraElement::zero(a.nstrands());
    for sigma in &group {
        acc = acc.try_add(&act(p, a, sigma)?)?;
    }
    Ok(acc.scale(&ratio(1, group.len() as i64)))
}

pub fn is_s_chi_invariant(p: &Problem, a: &AlgebraElement) -> Result<bool> {
    Ok(symmetrize_red_blocks(p, a)? == *a)
}
