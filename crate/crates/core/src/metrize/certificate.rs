//! Infeasibility certificates: nonnegative combinations of
//! `w(P) <= w(Q)` (or `w(P) < w(Q)`) inequalities.

use super::Chosen;
use crate::error::{parse_err, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::path_system::join;
use crate::weights::{fmt_rational, parse_rational, rational_string, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePair {
    pub chosen: Vec<usize>,
    pub competitor: Vec<usize>,
    #[serde(with = "rational_string")]
    pub multiplier: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub strict: bool,
    pub pairs: Vec<CertificatePair>,
}

impl Certificate {
    /// `c = sum lambda_i (chi(P_i) - chi(Q_i))`, indexed by edge id.
    /// Paths must be paths of `g`.
    pub fn coefficients(&self, g: &Graph) -> Option<Vec<Rational>> {
        let mut c = vec![Rational::zero(); g.m()];
        for pr in &self.pairs {
            for s in pr.chosen.windows(2) {
                let e = g.edge_id(s[0], s[1])?;
                c[e] += &pr.multiplier;
            }
            for s in pr.competitor.windows(2) {
                let e = g.edge_id(s[0], s[1])?;
                c[e] -= &pr.multiplier;
            }
        }
        Some(c)
    }

    /// Edges with a positive coefficient: each is forced to weight `<= 0`
    /// when the rest are positive.
    pub fn forced_edges(&self, g: &Graph) -> Vec<usize> {
        self.coefficients(g)
            .map(|c| (0..c.len()).filter(|&e| c[e].is_positive()).collect())
            .unwrap_or_default()
    }

    pub fn multiplier_sum(&self) -> Rational {
        self.pairs.iter().map(|p| &p.multiplier).sum()
    }

    /// Whitespace-tolerant reader. The multiplier may be written `p/q`,
    /// an integer, or prefixed by the word `lambda`.
    pub fn parse(text: &str) -> Result<Certificate> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("certificate") {
            return Err(parse_err(ln, "header must be `certificate strict=<0|1>`"));
        }
        let strict = match words.next().and_then(|w| w.strip_prefix("strict=")) {
            Some("0") => false,
            Some("1") => true,
            _ => return Err(parse_err(ln, "header must be `certificate strict=<0|1>`")),
        };
        let mut pairs = Vec::new();
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            let [lam, p, q] = parts[..] else {
                return Err(parse_err(ln, "expected `lambda | P: .. | Q: ..`"));
            };
            let lam = lam.strip_prefix("lambda").unwrap_or(lam).trim();
            let multiplier = parse_rational(lam).ok_or_else(|| parse_err(ln, format!("bad multiplier `{lam}`")))?;
            let p = p.strip_prefix("P:").ok_or_else(|| parse_err(ln, "missing `P:`"))?;
            let q = q.strip_prefix("Q:").ok_or_else(|| parse_err(ln, "missing `Q:`"))?;
            pairs.push(CertificatePair { chosen: parse_usizes(ln, p)?, competitor: parse_usizes(ln, q)?, multiplier });
        }
        Ok(Certificate { strict, pairs })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate strict={}", self.strict as u8)?;
        for p in &self.pairs {
            writeln!(f, "{} | P: {} | Q: {}", fmt_rational(&p.multiplier), join(&p.chosen), join(&p.competitor))?;
        }
        Ok(())
    }
}

/// Pure arithmetic check of a certificate against a (partial) system:
/// every chosen path is the system's path, every competitor is a
/// different simple path between the same ends, multipliers are
/// positive, and the combined coefficients are `>= 0` with either a
/// positive entry or (strict) a positive multiplier sum.
pub fn verify_certificate<S: Chosen + ?Sized>(ps: &S, cert: &Certificate) -> bool {
    let g = ps.graph();
    if cert.pairs.is_empty() {
        return false;
    }
    for pr in &cert.pairs {
        if !pr.multiplier.is_positive() || pr.chosen.len() < 2 || pr.competitor.len() < 2 {
            return false;
        }
        let (u, v) = (pr.chosen[0], *pr.chosen.last().unwrap());
        let Some(sys) = ps.chosen(u, v) else { return false };
        let same = sys == pr.chosen.as_slice() || sys.iter().rev().eq(pr.chosen.iter());
        if !same || !g.is_simple_path(&pr.competitor) {
            return false;
        }
        let (a, b) = (pr.competitor[0], *pr.competitor.last().unwrap());
        if !((a, b) == (u, v) || (a, b) == (v, u)) {
            return false;
        }
        let q_same = pr.competitor == pr.chosen || pr.competitor.iter().rev().eq(pr.chosen.iter());
        if q_same {
            return false;
        }
    }
    let Some(c) = cert.coefficients(g) else { return false };
    if c.iter().any(|x| x.is_negative()) {
        return false;
    }
    c.iter().any(|x| x.is_positive()) || (cert.strict && cert.multiplier_sum().is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_system::PathSystem;
    use crate::weights::int;

    fn c4_cert() -> (PathSystem, Certificate) {
        // C4 with the two "diagonal" pairs routed so that every edge is
        // forced by a sum of 0 < 0 in strict mode
        let g = Graph::cycle(4);
        let ps = PathSystem::from_fn(g, |u, v| match (u, v) {
            (0, 2) => vec![0, 1, 2],
            (1, 3) => vec![1, 2, 3],
            (0, 3) => vec![0, 3],
            _ => vec![u, v],
        })
        .unwrap();
        let cert = Certificate {
            strict: true,
            pairs: vec![
                CertificatePair { chosen: vec![0, 1, 2], competitor: vec![0, 3, 2], multiplier: int(1) },
                CertificatePair { chosen: vec![1, 2, 3], competitor: vec![1, 0, 3], multiplier: int(1) },
            ],
        };
        (ps, cert)
    }

    #[test]
    fn text_round_trip() {
        let (_, cert) = c4_cert();
        let text = cert.to_string();
        assert!(text.starts_with("certificate strict=1\n1/1 | P: 0 1 2 | Q: 0 3 2\n"));
        assert_eq!(Certificate::parse(&text).unwrap(), cert);
        let loose = "certificate   strict=1\n lambda 1 |P:0 1 2|  Q: 0 3 2\n1|P: 1 2 3|Q: 1 0 3\n";
        assert_eq!(Certificate::parse(loose).unwrap(), cert);
    }

    #[test]
    fn coefficient_conditions() {
        let (ps, mut cert) = c4_cert();
        // c = (01)+(12) - (03)-(23) + (12)+(23) - (01)-(03) = 2(12) - 2(03)
        let c = cert.coefficients(ps.graph()).unwrap();
        assert!(c.iter().any(|x| x.is_negative()));
        assert!(!verify_certificate(&ps, &cert));
        cert.pairs[1].chosen = vec![1, 0, 3];
        assert!(!verify_certificate(&ps, &cert), "chosen path must be the system's");
    }

    #[test]
    fn rejects_competitor_equal_to_chosen() {
        let (ps, _) = c4_cert();
        let cert = Certificate {
            strict: true,
            pairs: vec![CertificatePair { chosen: vec![0, 1, 2], competitor: vec![2, 1, 0], multiplier: int(1) }],
        };
        assert!(!verify_certificate(&ps, &cert));
    }
}
