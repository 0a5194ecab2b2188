use super::{relative_position, theta_limit_lattice, BuildingError, Lattice, LatticeClass};
use crate::scalar::BaseField;
use num_rational::BigRational;

/// A flag z M_m = M_0 < M_1 < ... < M_m of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSimplex {
    flag: Vec<Lattice>,
}

impl BuildingSimplex {
    /// Full flag including M_0 = z M_m.
    pub fn flag(&self) -> &[Lattice] {
        &self.flag
    }

    pub fn top(&self) -> &Lattice {
        self.flag.last().unwrap()
    }

    /// The vertices M_1..M_m as classes, in flag order.
    pub fn vertices(&self) -> Vec<LatticeClass> {
        self.flag[1..].iter().map(|l| l.class()).collect()
    }

    pub fn dim(&self) -> usize {
        self.flag.len() - 2
    }

    /// k-dimensions of the successive quotients M_i / M_{i-1}.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.flag.windows(2).map(|w| (w[0].det_val() - w[1].det_val()) as usize).collect()
    }
}

/// Orders pairwise incident classes into a flag, taking the least
/// canonical matrix as the top. None when some pair is not incident.
pub fn simplex_of(classes: &[LatticeClass]) -> Option<BuildingSimplex> {
    let mut cs: Vec<LatticeClass> = classes.to_vec();
    cs.sort();
    cs.dedup();
    if cs.is_empty() {
        return None;
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let e = relative_position(&cs[i], &cs[j]).ok()?;
            if e.iter().any(|&x| x > 1) {
                return None;
            }
        }
    }
    let top = cs[0].rep().clone();
    let mut mids: Vec<Lattice> = cs[1..].iter().map(|c| theta_limit_lattice(&top, c.rep()).1).collect();
    mids.sort_by_key(|l| std::cmp::Reverse(l.det_val()));
    let mut flag = vec![top.scaled(1)];
    flag.extend(mids);
    flag.push(top);
    for w in flag.windows(2) {
        if !w[1].contains(&w[0]) || w[0] == w[1] {
            return None;
        }
    }
    Some(BuildingSimplex { flag })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformizerExtension {
    pub m: usize,
    /// The class N over k[[t]], t^m = z.
    pub lattice: LatticeClass,
    /// Rank of the assembled map from the quotients M_i/M_{i-1} to N/tN.
    pub residue_rank: usize,
}

/// N = M_1' + t M_2' + ... + t^{k-1} M_k' after substituting z = t^m.
pub fn extend_uniformizer(sigma: &BuildingSimplex, m: usize) -> Result<UniformizerExtension, BuildingError> {
    let r = sigma.top().rank();
    if m < r {
        return Err(BuildingError::DegreeTooSmall { m, r });
    }
    let k = sigma.flag.len() - 1;
    let parts: Vec<Lattice> = (1..=k)
        .map(|i| {
            let cols: Vec<_> = sigma.flag[i]
                .columns()
                .iter()
                .map(|c| c.iter().map(|x| x.inflate(m).shifted(i as i64 - 1)).collect())
                .collect();
            Lattice::from_generators(r, &cols).expect("flag members have full rank")
        })
        .collect();
    let mut n = parts[0].clone();
    for p in &parts[1..] {
        n = n.sum(p);
    }
    let field = BaseField::Rationals;
    let mut images: Vec<Vec<BigRational>> = Vec::new();
    for p in &parts {
        for c in p.columns() {
            let x = n.coords(c);
            images.push(x.iter().map(|e| e.residue_at_zero().expect("contained in N")).collect());
        }
    }
    let residue_rank = field.rank(&images);
    Ok(UniformizerExtension { m, lattice: n.class(), residue_rank })
}
