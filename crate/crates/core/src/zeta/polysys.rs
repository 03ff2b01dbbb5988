//! Multivariate polynomial systems over F_q and their text format.
//!
//! The on-disk format is one polynomial per line after a header line:
//!
//! ```text
//! p r projective|affine [nvars]
//! 3*X0^2*X1 - X2^3 + 1
//! ```
//!
//! Terms are integer coefficients (reduced mod p, negatives allowed) times
//! monomials `Xi^e` joined by `*`; exponent 1 and coefficient 1 may be
//! omitted. Projective systems use variables X0..Xn and every polynomial
//! must be homogeneous; affine systems use X1..Xn. The optional `nvars`
//! header entry pins the variable count when a variable does not appear in
//! any polynomial (or the system is empty).

use crate::error::{Error, Result};
use crate::field::{field_create, FieldCtx, FieldElement};

/// One monomial with its coefficient; `exps` has one entry per variable.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: FieldElement,
    pub exps: Vec<u32>,
}

/// A polynomial in dense-term form.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    terms: Vec<Term>,
    nvars: usize,
}

impl MultiPoly {
    /// Build from terms; like monomials are combined and zero terms dropped.
    pub fn new(ctx: &FieldCtx, nvars: usize, terms: Vec<Term>) -> Result<Self> {
        let mut combined: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    reg: 0,
                    found: t.exps.len(),
                    expected: nvars,
                });
            }
            match combined.iter_mut().find(|c| c.exps == t.exps) {
                Some(c) => c.coeff = ctx.add(c.coeff, t.coeff)?,
                None => combined.push(t),
            }
        }
        combined.retain(|t| !t.coeff.is_zero());
        Ok(MultiPoly {
            terms: combined,
            nvars,
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self
            .terms
            .iter()
            .map(|t| t.exps.iter().map(|&e| e as u64).sum::<u64>());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }
}

/// A list of polynomials cutting out a projective or affine solution set.
#[derive(Clone, Debug)]
pub struct PolySystem {
    ctx: FieldCtx,
    polys: Vec<MultiPoly>,
    projective: bool,
    nvars: usize,
}

impl PolySystem {
    pub fn new(ctx: FieldCtx, polys: Vec<MultiPoly>, projective: bool, nvars: usize) -> Result<Self> {
        for (i, poly) in polys.iter().enumerate() {
            if poly.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    reg: i,
                    found: poly.nvars(),
                    expected: nvars,
                });
            }
            if projective && !poly.is_homogeneous() {
                return Err(Error::NonHomogeneous { line: i + 1 });
            }
        }
        Ok(PolySystem {
            ctx,
            polys,
            projective,
            nvars,
        })
    }

    /// Parse the text format described in the module docs.
    pub fn parse(text: &str) -> Result<PolySystem> {
        Self::parse_with_nvars(text, None)
    }

    /// Parse, letting the caller pin the variable count when the header
    /// does not.
    pub fn parse_with_nvars(text: &str, nvars_override: Option<usize>) -> Result<PolySystem> {
        let mut header: Option<(u64, u32, bool, Option<usize>, usize)> = None;
        let mut raw_polys: Vec<(usize, Vec<RawTerm>)> = Vec::new();

        for (line_idx, line) in text.lines().enumerate() {
            let line_no = line_idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if header.is_none() {
                header = Some(parse_header(line_no, trimmed)?);
                continue;
            }
            let (p, ..) = header.unwrap();
            let projective = header.unwrap().2;
            raw_polys.push((line_no, parse_poly_line(line_no, line, p, projective)?));
        }

        let (p, r, projective, header_nvars, _line) = header.ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "missing header line `p r projective|affine [nvars]`".into(),
        })?;
        let ctx = field_create(p, r)?;

        let seen_max = raw_polys
            .iter()
            .flat_map(|(_, terms)| terms.iter())
            .flat_map(|t| t.factors.iter())
            .map(|&(var, _)| var + 1)
            .max()
            .unwrap_or(0);
        let nvars = nvars_override
            .or(header_nvars)
            .unwrap_or(seen_max)
            .max(seen_max);
        if nvars == 0 {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "cannot determine the number of variables; add it to the header".into(),
            });
        }

        let mut polys = Vec::with_capacity(raw_polys.len());
        let mut lines = Vec::with_capacity(raw_polys.len());
        for (line_no, raw_terms) in raw_polys {
            let mut terms = Vec::with_capacity(raw_terms.len());
            for rt in raw_terms {
                let mut exps = vec![0u32; nvars];
                for (var, e) in rt.factors {
                    exps[var] += e;
                }
                terms.push(Term {
                    coeff: ctx.from_int(rt.coeff),
                    exps,
                });
            }
            polys.push(MultiPoly::new(&ctx, nvars, terms)?);
            lines.push(line_no);
        }

        for (poly, line) in polys.iter().zip(&lines) {
            if projective && !poly.is_homogeneous() {
                return Err(Error::NonHomogeneous { line: *line });
            }
        }
        PolySystem::new(ctx, polys, projective, nvars)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn projective(&self) -> bool {
        self.projective
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Ambient dimension: n of P^n for projective systems (nvars - 1), or
    /// the number of affine coordinates otherwise.
    pub fn ambient_dim(&self) -> usize {
        if self.projective {
            self.nvars - 1
        } else {
            self.nvars
        }
    }
}

struct RawTerm {
    coeff: i64,
    factors: Vec<(usize, u32)>,
}

fn parse_header(line: usize, text: &str) -> Result<(u64, u32, bool, Option<usize>, usize)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() < 3 || tokens.len() > 4 {
        return Err(Error::Parse {
            line,
            col: 1,
            msg: "header must be `p r projective|affine [nvars]`".into(),
        });
    }
    let p: u64 = tokens[0].parse().map_err(|_| Error::Parse {
        line,
        col: 1,
        msg: format!("invalid characteristic `{}`", tokens[0]),
    })?;
    let r: u32 = tokens[1].parse().map_err(|_| Error::Parse {
        line,
        col: 1,
        msg: format!("invalid extension degree `{}`", tokens[1]),
    })?;
    let projective = match tokens[2] {
        "projective" => true,
        "affine" => false,
        other => {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!("mode must be `projective` or `affine`, got `{other}`"),
            })
        }
    };
    let nvars = match tokens.get(3) {
        None => None,
        Some(tok) => Some(tok.parse().map_err(|_| Error::Parse {
            line,
            col: 1,
            msg: format!("invalid variable count `{tok}`"),
        })?),
    };
    Ok((p, r, projective, nvars, line))
}

fn parse_poly_line(line: usize, text: &str, p: u64, projective: bool) -> Result<Vec<RawTerm>> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut terms = Vec::new();
    let err = |pos: usize, msg: String| Error::Parse {
        line,
        col: pos + 1,
        msg,
    };

    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    let mut sign: i64 = 1;
    if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
        sign = if chars[pos] == '-' { -1 } else { 1 };
        pos += 1;
    }
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            return Err(err(pos, "expected a term".into()));
        }
        // One term: integer and monomial factors joined by '*'.
        let mut coeff: i128 = sign as i128;
        let mut factors: Vec<(usize, u32)> = Vec::new();
        let mut saw_factor = false;
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                break;
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let start = pos;
                let mut v: i128 = 0;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    v = v * 10 + (chars[pos] as u8 - b'0') as i128;
                    if v > i64::MAX as i128 {
                        return Err(err(start, "integer literal too large".into()));
                    }
                    pos += 1;
                }
                coeff = coeff * v % p as i128;
                saw_factor = true;
            } else if c == 'X' || c == 'x' {
                pos += 1;
                let start = pos;
                let mut var: usize = 0;
                let mut any = false;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    var = var * 10 + (chars[pos] as u8 - b'0') as usize;
                    any = true;
                    pos += 1;
                }
                if !any {
                    return Err(err(start, "variable needs an index, e.g. X0".into()));
                }
                if var > 32 {
                    return Err(err(start, format!("variable index {var} too large")));
                }
                if !projective {
                    if var == 0 {
                        return Err(err(start, "affine polynomials use X1..Xn".into()));
                    }
                    var -= 1;
                }
                let mut exp: u32 = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let estart = pos;
                    let mut v: u64 = 0;
                    let mut any = false;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        v = v * 10 + (chars[pos] as u8 - b'0') as u64;
                        any = true;
                        if v > u32::MAX as u64 {
                            return Err(err(estart, "exponent too large".into()));
                        }
                        pos += 1;
                    }
                    if !any {
                        return Err(err(estart, "`^` needs an exponent".into()));
                    }
                    exp = v as u32;
                }
                factors.push((var, exp));
                saw_factor = true;
            } else {
                return Err(err(pos, format!("unexpected character `{c}` in term")));
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(err(pos, "empty term".into()));
        }
        terms.push(RawTerm {
            coeff: coeff.rem_euclid(p as i128) as i64,
            factors,
        });

        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        match chars[pos] {
            '+' => sign = 1,
            '-' => sign = -1,
            other => return Err(err(pos, format!("expected `+` or `-`, got `{other}`"))),
        }
        pos += 1;
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_line_example() {
        let sys = PolySystem::parse("5 1 projective\nX1 + X2\n").unwrap();
        assert!(sys.projective());
        assert_eq!(sys.nvars(), 3);
        assert_eq!(sys.ambient_dim(), 2);
        assert_eq!(sys.polys().len(), 1);
        assert_eq!(sys.polys()[0].terms().len(), 2);
    }

    #[test]
    fn parses_coefficients_and_powers() {
        let sys = PolySystem::parse("7 1 projective\n-X0^2 + X1^2 + X2^2 + X3^2\n").unwrap();
        let terms = sys.polys()[0].terms();
        assert_eq!(terms.len(), 4);
        // -1 mod 7 = 6.
        assert_eq!(terms[0].coeff.index(), 6);
        assert_eq!(terms[0].exps, vec![2, 0, 0, 0]);
    }

    #[test]
    fn affine_mode_uses_one_based_variables() {
        let sys = PolySystem::parse("3 1 affine\nX1^2 + 1\n").unwrap();
        assert!(!sys.projective());
        assert_eq!(sys.nvars(), 1);
        let e = PolySystem::parse("3 1 affine\nX0^2 + 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn rejects_inhomogeneous_projective_input() {
        let e = PolySystem::parse("5 1 projective\nX0^2 + X1\n").unwrap_err();
        assert!(matches!(e, Error::NonHomogeneous { line: 2 }));
    }

    #[test]
    fn zero_terms_cancel() {
        let sys = PolySystem::parse("5 1 projective\nX0 + 4*X0 + X1\n").unwrap();
        // X0 + 4 X0 = 5 X0 = 0 mod 5; only X1 remains.
        assert_eq!(sys.polys()[0].terms().len(), 1);
    }

    #[test]
    fn header_nvars_and_empty_system() {
        let sys = PolySystem::parse("5 1 projective 3\n").unwrap();
        assert_eq!(sys.nvars(), 3);
        assert!(sys.polys().is_empty());
        let e = PolySystem::parse("5 1 projective\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn error_positions_are_reported() {
        let e = PolySystem::parse("5 1 projective\nX0 + ?\n").unwrap_err();
        match e {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 6);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn implicit_products_and_repeated_vars() {
        let sys = PolySystem::parse("5 1 projective\n2*X0*X1*X0 - X2^3\n").unwrap();
        let t = &sys.polys()[0].terms()[0];
        assert_eq!(t.exps, vec![2, 1, 0]);
        assert!(sys.polys()[0].is_homogeneous());
    }
}
