//! Assembly of the overdetermined collocation system: 4(nu+1) collocation
//! equations plus the normalization row pi Sum_k phi_k0 = 1, in the
//! unknowns phi_kn ordered arc-major.
//!
//! Only six coefficient blocks are computed; the other ten follow from the
//! two mirror symmetries of the boundary (z -> -z maps arcs 0,1,2,3 to
//! 2,3,0,1 exactly; conjugation maps each arc to itself or its partner
//! with t -> -t, contributing the (-1)^n, m -> nu-m transfers).

use std::f64::consts::PI;

use crate::geometry::{ArcKind, DomainGeometry};
use crate::symm::coefficients::{
    collocation_points, dome_frame, dome_target_row, straight_arc_line, straight_self_row,
    straight_target_row, DomeSelfEvaluator,
};
use crate::symm::SymmConfig;
use crate::Result;

/// Dense row-major collocation matrix and right-hand side.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub nrows: usize,
    pub ncols: usize,
    pub matrix: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl CollocationSystem {
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.ncols + col]
    }
}

/// One (nu+1) x (nu+1) coefficient block, row-major in m.
struct Block {
    np: usize,
    data: Vec<f64>,
}

impl Block {
    fn new(np: usize) -> Self {
        Block {
            np,
            data: vec![0.0; np * np],
        }
    }

    fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.np..(m + 1) * self.np]
    }

    fn row_mut(&mut self, m: usize) -> &mut [f64] {
        &mut self.data[m * self.np..(m + 1) * self.np]
    }

    /// Fill rows with 2m > nu from their mirrors: value (m,n) =
    /// (-1)^n value(nu-m, n).
    fn mirror_upper_half(&mut self) {
        let nu = self.np - 1;
        for m in 0..=nu {
            if 2 * m > nu {
                let (lo, hi) = self.data.split_at_mut(m * self.np);
                let src = &lo[(nu - m) * self.np..(nu - m + 1) * self.np];
                let dst = &mut hi[..self.np];
                for (n, (d, s)) in dst.iter_mut().zip(src).enumerate() {
                    *d = if n % 2 == 0 { *s } else { -*s };
                }
            }
        }
    }
}

pub fn assemble_system(geom: &DomainGeometry, cfg: &SymmConfig) -> Result<CollocationSystem> {
    cfg.validate()?;
    let nu = cfg.nu;
    let tol = cfg.quadrature_tol;
    let np = nu + 1;
    let colloc = collocation_points(nu);
    let l = geom.half_length();

    // Block (0,0): bottom side onto itself, closed form.
    let mut b00 = Block::new(np);
    for m in 0..=nu {
        straight_self_row(l, colloc.points[m], b00.row_mut(m));
    }

    // Block (1,1): right end onto itself.
    let mut b11 = Block::new(np);
    match geom.arc_kind(1) {
        ArcKind::Curved => {
            let mut eval = DomeSelfEvaluator::new(nu, tol);
            for m in 0..=nu {
                if 2 * m <= nu {
                    eval.row(colloc.angles[m], b11.row_mut(m))?;
                }
            }
            b11.mirror_upper_half();
        }
        ArcKind::Straight => {
            for m in 0..=nu {
                straight_self_row(1.0, colloc.points[m], b11.row_mut(m));
            }
        }
    }

    // Block (0,1): bottom collocation, right end target. No m-symmetry.
    let mut b01 = Block::new(np);
    for m in 0..=nu {
        let z0 = geom.arc_point_unchecked(0, colloc.points[m]);
        match geom.arc_kind(1) {
            ArcKind::Curved => dome_target_row(dome_frame(geom, 1, z0), b01.row_mut(m)),
            ArcKind::Straight => {
                straight_target_row(z0, straight_arc_line(geom, 1), nu, tol, b01.row_mut(m))
                    .map(|_| ())?
            }
        }
    }

    // Block (1,0): right-end collocation, bottom target. No m-symmetry.
    let mut b10 = Block::new(np);
    let line0 = straight_arc_line(geom, 0);
    for m in 0..=nu {
        let z0 = geom.arc_point_unchecked(1, colloc.points[m]);
        straight_target_row(z0, line0, nu, tol, b10.row_mut(m))?;
    }

    // Block (0,2): bottom collocation, top target. Mirror in m.
    let mut b02 = Block::new(np);
    let line2 = straight_arc_line(geom, 2);
    for m in 0..=nu {
        if 2 * m <= nu {
            let z0 = geom.arc_point_unchecked(0, colloc.points[m]);
            straight_target_row(z0, line2, nu, tol, b02.row_mut(m))?;
        }
    }
    b02.mirror_upper_half();

    // Block (1,3): right-end collocation, left end target. Mirror in m.
    let mut b13 = Block::new(np);
    for m in 0..=nu {
        if 2 * m <= nu {
            let z0 = geom.arc_point_unchecked(1, colloc.points[m]);
            match geom.arc_kind(3) {
                ArcKind::Curved => dome_target_row(dome_frame(geom, 3, z0), b13.row_mut(m)),
                ArcKind::Straight => {
                    straight_target_row(z0, straight_arc_line(geom, 3), nu, tol, b13.row_mut(m))
                        .map(|_| ())?
                }
            }
        }
    }
    b13.mirror_upper_half();

    // Write out the full system.
    let nrows = 4 * np + 1;
    let ncols = 4 * np;
    let mut matrix = vec![0.0; nrows * ncols];
    let mut rhs = vec![0.0; nrows];

    for j in 0..4 {
        for m in 0..=nu {
            let r = j * np + m;
            rhs[r] = geom
                .arc_point_unchecked(j, colloc.points[m])
                .norm()
                .ln();
            for k in 0..4 {
                let dst = &mut matrix[r * ncols + k * np..r * ncols + (k + 1) * np];
                let (src, flipped): (&Block, bool) = match (j, k) {
                    (0, 0) | (2, 2) => (&b00, false),
                    (1, 1) | (3, 3) => (&b11, false),
                    (0, 1) | (2, 3) => (&b01, false),
                    (1, 0) | (3, 2) => (&b10, false),
                    (0, 2) | (2, 0) => (&b02, false),
                    (1, 3) | (3, 1) => (&b13, false),
                    (0, 3) | (2, 1) => (&b01, true),
                    (1, 2) | (3, 0) => (&b10, true),
                    _ => unreachable!(),
                };
                if flipped {
                    let srow = src.row(nu - m);
                    for (n, d) in dst.iter_mut().enumerate() {
                        *d = if n % 2 == 0 { srow[n] } else { -srow[n] };
                    }
                } else {
                    dst.copy_from_slice(src.row(m));
                }
            }
        }
    }

    // Normalization row: pi at each arc's n = 0 column.
    let r = 4 * np;
    for k in 0..4 {
        matrix[r * ncols + k * np] = PI;
    }
    rhs[r] = 1.0;

    Ok(CollocationSystem {
        nrows,
        ncols,
        matrix,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symm::coefficients::coefficient_c;

    #[test]
    fn system_shape() {
        let geom = DomainGeometry::stadium(1.0).unwrap();
        let cfg = SymmConfig::new(64);
        let sys = assemble_system(&geom, &cfg).unwrap();
        assert_eq!(sys.nrows, 261);
        assert_eq!(sys.ncols, 260);
        assert_eq!(sys.matrix.len(), 261 * 260);
        assert_eq!(sys.rhs.len(), 261);
    }

    #[test]
    fn mirrored_blocks_are_exact_copies() {
        let geom = DomainGeometry::stadium(0.8).unwrap();
        let cfg = SymmConfig::new(6);
        let sys = assemble_system(&geom, &cfg).unwrap();
        let np = 7;
        // C_{2m2n} == C_{0m0n} bit-for-bit.
        for m in 0..np {
            for n in 0..np {
                let c00 = sys.entry(m, n);
                let c22 = sys.entry(2 * np + m, 2 * np + n);
                assert_eq!(c00, c22);
            }
        }
    }

    #[test]
    fn every_entry_matches_direct_evaluation() {
        // The mirror bookkeeping must agree with computing each block
        // directly from its own integral.
        for geom in [
            DomainGeometry::stadium(1.0).unwrap(),
            DomainGeometry::rectangle(1.3).unwrap(),
        ] {
            let nu = 6;
            let cfg = SymmConfig::new(nu);
            let sys = assemble_system(&geom, &cfg).unwrap();
            let np = nu + 1;
            for j in 0..4 {
                for k in 0..4 {
                    for m in 0..=nu {
                        for n in 0..=nu {
                            let direct =
                                coefficient_c(&geom, nu, j, m, k, n, cfg.quadrature_tol).unwrap();
                            let assembled = sys.entry(j * np + m, k * np + n);
                            assert!(
                                (direct - assembled).abs() < 1e-9,
                                "mismatch at j={j} m={m} k={k} n={n}: \
                                 direct {direct}, assembled {assembled}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_row() {
        let geom = DomainGeometry::rectangle(2.0).unwrap();
        let cfg = SymmConfig::new(4);
        let sys = assemble_system(&geom, &cfg).unwrap();
        let np = 5;
        let r = 4 * np;
        for c in 0..sys.ncols {
            let expect = if c % np == 0 { PI } else { 0.0 };
            assert_eq!(sys.entry(r, c), expect);
        }
        assert_eq!(sys.rhs[r], 1.0);
    }

    #[test]
    fn undersized_nu_is_rejected() {
        let geom = DomainGeometry::stadium(1.0).unwrap();
        let cfg = SymmConfig::new(2);
        assert!(assemble_system(&geom, &cfg).is_err());
    }
}
