//! The extension-tower specification language.
//!
//! Grammar: `spec := term ('*' term)*`, `term := NAME '(' args ')'`, each
//! arg an integer, a `key=value` pair, or a bracketed list of `(u, g)`
//! pairs. Terms are listed base-field-first; the residue characteristic is
//! fixed by the first term that carries a `p` and binds the rest.

use std::fmt;

use herbrand::exactnum::{PiecewiseLinearFn, Rational};
use herbrand::ramification::RamificationProfile;

/// Parse or validation failure, carrying the byte offset it surfaced at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for SpecError {}

type SpecResult<T> = std::result::Result<T, SpecError>;

fn err<T>(offset: usize, message: impl Into<String>) -> SpecResult<T> {
    Err(SpecError { offset, message: message.into() })
}

/// One tower step, normalized to its defining parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Unram { f: u64 },
    Tame { e: u64 },
    ArtinSchreier { p: u64, m: u64 },
    Cyclotomic { p: u64, n: u64 },
    Breaks { p: u64, e: u64, f: u64, steps: Vec<(u64, u64)> },
}

impl Term {
    /// The residue characteristic this term fixes, if any.
    fn binds_p(&self) -> Option<u64> {
        match *self {
            Term::Unram { .. } | Term::Tame { .. } => None,
            Term::ArtinSchreier { p, .. } | Term::Cyclotomic { p, .. } | Term::Breaks { p, .. } => {
                Some(p)
            }
        }
    }

    fn profile(&self, p: u64) -> herbrand::Result<RamificationProfile> {
        match self {
            Term::Unram { f } => RamificationProfile::unramified(p, *f),
            Term::Tame { e } => RamificationProfile::tame(p, *e),
            Term::ArtinSchreier { p, m } => RamificationProfile::artin_schreier(*p, *m),
            Term::Cyclotomic { p, n } => RamificationProfile::cyclotomic(*p, *n as u32),
            Term::Breaks { p, e, f, steps } => {
                RamificationProfile::from_breaks(*p, *e, *f, steps, false)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Unram { f } => write!(out, "unram({f})"),
            Term::Tame { e } => write!(out, "tame({e})"),
            Term::ArtinSchreier { p, m } => write!(out, "as(p={p}, m={m})"),
            Term::Cyclotomic { p, n } => write!(out, "cyclo(p={p}, n={n})"),
            Term::Breaks { p, e, f, steps } => {
                write!(out, "breaks(p={p}, e={e}, f={f}, [")?;
                for (i, (u, g)) in steps.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "({u}, {g})")?;
                }
                write!(out, "])")
            }
        }
    }
}

/// A parsed tower, base term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub terms: Vec<Term>,
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(out, " * ")?;
            }
            write!(out, "{term}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Star,
}

impl fmt::Display for Tok {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(out, "identifier '{s}'"),
            Tok::Int(n) => write!(out, "integer {n}"),
            Tok::LParen => write!(out, "'('"),
            Tok::RParen => write!(out, "')'"),
            Tok::LBracket => write!(out, "'['"),
            Tok::RBracket => write!(out, "']'"),
            Tok::Comma => write!(out, "','"),
            Tok::Eq => write!(out, "'='"),
            Tok::Star => write!(out, "'*'"),
        }
    }
}

fn lex(text: &str) -> SpecResult<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            b'[' => {
                toks.push((Tok::LBracket, start));
                i += 1;
            }
            b']' => {
                toks.push((Tok::RBracket, start));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            b'=' => {
                toks.push((Tok::Eq, start));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = match text[start..i].parse() {
                    Ok(n) => n,
                    Err(_) => return err(start, "integer literal out of range"),
                };
                toks.push((Tok::Int(n), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => return err(start, format!("unexpected character '{}'", other as char)),
        }
    }
    Ok(toks)
}

#[derive(Clone, Debug)]
enum ArgValue {
    Int(u64),
    List(Vec<(u64, u64)>),
}

#[derive(Clone, Debug)]
struct Arg {
    name: Option<String>,
    value: ArgValue,
    offset: usize,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    text_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.text_len, |&(_, o)| o)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> SpecResult<usize> {
        match self.next() {
            Some((tok, off)) if &tok == want => Ok(off),
            Some((tok, off)) => err(off, format!("expected {want}, found {tok}")),
            None => err(self.text_len, format!("expected {want}, found end of input")),
        }
    }

    fn expect_int(&mut self) -> SpecResult<(u64, usize)> {
        match self.next() {
            Some((Tok::Int(n), off)) => Ok((n, off)),
            Some((tok, off)) => err(off, format!("expected an integer, found {tok}")),
            None => err(self.text_len, "expected an integer, found end of input"),
        }
    }

    fn parse_value(&mut self) -> SpecResult<(ArgValue, usize)> {
        match self.peek() {
            Some((Tok::Int(_), _)) => {
                let (n, off) = self.expect_int()?;
                Ok((ArgValue::Int(n), off))
            }
            Some((Tok::LBracket, _)) => {
                let off = self.expect(&Tok::LBracket)?;
                let mut pairs = Vec::new();
                if !matches!(self.peek(), Some((Tok::RBracket, _))) {
                    loop {
                        self.expect(&Tok::LParen)?;
                        let (u, _) = self.expect_int()?;
                        self.expect(&Tok::Comma)?;
                        let (g, _) = self.expect_int()?;
                        self.expect(&Tok::RParen)?;
                        pairs.push((u, g));
                        if matches!(self.peek(), Some((Tok::Comma, _))) {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(&Tok::RBracket)?;
                Ok((ArgValue::List(pairs), off))
            }
            Some((tok, off)) => err(*off, format!("expected a value, found {tok}")),
            None => err(self.text_len, "expected a value, found end of input"),
        }
    }

    fn parse_arg(&mut self) -> SpecResult<Arg> {
        if let Some((Tok::Ident(name), off)) = self.peek().cloned() {
            self.pos += 1;
            self.expect(&Tok::Eq)?;
            let (value, _) = self.parse_value()?;
            return Ok(Arg { name: Some(name), value, offset: off });
        }
        let (value, offset) = self.parse_value()?;
        Ok(Arg { name: None, value, offset })
    }

    fn parse_term(&mut self) -> SpecResult<Term> {
        let (name, name_off) = match self.next() {
            Some((Tok::Ident(s), off)) => (s, off),
            Some((tok, off)) => return err(off, format!("expected a term name, found {tok}")),
            None => return err(self.text_len, "expected a term name, found end of input"),
        };
        self.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if !matches!(self.peek(), Some((Tok::RParen, _))) {
            loop {
                args.push(self.parse_arg()?);
                if matches!(self.peek(), Some((Tok::Comma, _))) {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(&Tok::RParen)?;
        bind_term(&name, name_off, args)
    }
}

/// Parameter slots per term name; `steps` is the bracketed-list slot.
fn term_slots(name: &str) -> Option<&'static [&'static str]> {
    match name {
        "unram" => Some(&["f"]),
        "tame" => Some(&["e"]),
        "as" => Some(&["p", "m"]),
        "cyclo" => Some(&["p", "n"]),
        "breaks" => Some(&["p", "e", "f", "steps"]),
        _ => None,
    }
}

fn bind_term(name: &str, name_off: usize, args: Vec<Arg>) -> SpecResult<Term> {
    let Some(slots) = term_slots(name) else {
        return err(
            name_off,
            format!("unknown term '{name}' (expected unram, tame, as, cyclo, or breaks)"),
        );
    };
    let mut filled: Vec<Option<(ArgValue, usize)>> = vec![None; slots.len()];
    for arg in args {
        let idx = match &arg.name {
            Some(n) => match slots.iter().position(|s| s == n) {
                Some(i) => i,
                None => return err(arg.offset, format!("term '{name}' has no parameter '{n}'")),
            },
            None => match filled.iter().position(Option::is_none) {
                Some(i) => i,
                None => return err(arg.offset, format!("too many arguments for '{name}'")),
            },
        };
        if filled[idx].is_some() {
            return err(arg.offset, format!("parameter '{}' given twice", slots[idx]));
        }
        filled[idx] = Some((arg.value, arg.offset));
    }

    let take_int = |filled: &[Option<(ArgValue, usize)>], idx: usize| -> SpecResult<u64> {
        match &filled[idx] {
            Some((ArgValue::Int(n), _)) => Ok(*n),
            Some((ArgValue::List(_), off)) => {
                err(*off, format!("parameter '{}' expects an integer", slots[idx]))
            }
            None => err(name_off, format!("missing parameter '{}' for '{name}'", slots[idx])),
        }
    };

    let term = match name {
        "unram" => Term::Unram { f: take_int(&filled, 0)? },
        "tame" => Term::Tame { e: take_int(&filled, 0)? },
        "as" => Term::ArtinSchreier { p: take_int(&filled, 0)?, m: take_int(&filled, 1)? },
        "cyclo" => Term::Cyclotomic { p: take_int(&filled, 0)?, n: take_int(&filled, 1)? },
        "breaks" => {
            let steps = match filled[3].take() {
                Some((ArgValue::List(pairs), _)) => pairs,
                Some((ArgValue::Int(_), off)) => {
                    return err(off, "parameter 'steps' expects a list like [(1, 4), (3, 2)]")
                }
                None => return err(name_off, "missing parameter 'steps' for 'breaks'"),
            };
            Term::Breaks {
                p: take_int(&filled, 0)?,
                e: take_int(&filled, 1)?,
                f: take_int(&filled, 2)?,
                steps,
            }
        }
        _ => unreachable!("term_slots vetted the name"),
    };
    validate_term(&term, name_off)?;
    Ok(term)
}

/// Catalog preconditions that can be checked term-locally.
fn validate_term(term: &Term, offset: usize) -> SpecResult<()> {
    match term {
        Term::Unram { f } if *f == 0 => err(offset, "f must be >= 1"),
        Term::Tame { e } if *e == 0 => err(offset, "e must be >= 1"),
        Term::ArtinSchreier { p, m } => {
            if *p >= 2 && (*m == 0 || m % p == 0) {
                return err(offset, "gcd(m, p) must be 1");
            }
            match term.profile(*p) {
                Ok(_) => Ok(()),
                Err(e) => err(offset, e.to_string()),
            }
        }
        Term::Cyclotomic { p, n } => {
            if *n > u32::MAX as u64 {
                return err(offset, "n is out of range");
            }
            match term.profile(*p) {
                Ok(_) => Ok(()),
                Err(e) => err(offset, e.to_string()),
            }
        }
        Term::Breaks { p, .. } => match term.profile(*p) {
            Ok(_) => Ok(()),
            Err(e) => err(offset, e.to_string()),
        },
        _ => Ok(()),
    }
}

impl ExtensionSpec {
    /// Parses a tower specification, enforcing the term grammar, each
    /// term's catalog preconditions, and cross-term `p` consistency.
    pub fn parse(text: &str) -> SpecResult<Self> {
        let toks = lex(text)?;
        let mut parser = Parser { toks, pos: 0, text_len: text.len() };
        if parser.peek().is_none() {
            return err(0, "empty specification: expected a term");
        }
        let mut terms = Vec::new();
        let mut term_offsets = Vec::new();
        loop {
            term_offsets.push(parser.here());
            terms.push(parser.parse_term()?);
            match parser.next() {
                None => break,
                Some((Tok::Star, _)) => continue,
                Some((tok, off)) => return err(off, format!("expected '*' or end, found {tok}")),
            }
        }

        let mut bound: Option<u64> = None;
        for (term, &offset) in terms.iter().zip(&term_offsets) {
            if let Some(p) = term.binds_p() {
                match bound {
                    None => bound = Some(p),
                    Some(q) if q != p => {
                        return err(
                            offset,
                            format!("residue characteristic p = {p} conflicts with p = {q} fixed by an earlier term"),
                        )
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(ExtensionSpec { terms })
    }

    /// Canonical rendering; `parse(print(s)) == s` for every valid spec.
    pub fn print(&self) -> String {
        self.to_string()
    }

    /// The residue characteristic fixed by the spec, if any term binds one.
    pub fn bound_p(&self) -> Option<u64> {
        self.terms.iter().find_map(Term::binds_p)
    }

    /// Builds the tower: per-term profiles over a common `p` (inferred as
    /// the smallest prime compatible with every tame term when no term
    /// binds one) and the composed Herbrand pair. Per the transitivity
    /// identity, psi functions compose base-first:
    /// `psi_total = psi_top o ... o psi_base`.
    pub fn compile(&self) -> herbrand::Result<CompiledTower> {
        let p = match self.bound_p() {
            Some(p) => p,
            None => {
                let mut candidate = 2;
                'search: loop {
                    for term in &self.terms {
                        if let Term::Tame { e } = term {
                            if e % candidate == 0 {
                                candidate = next_prime(candidate);
                                continue 'search;
                            }
                        }
                    }
                    break candidate;
                }
            }
        };

        let mut profiles = Vec::new();
        let mut psi = PiecewiseLinearFn::identity();
        let mut e = 1u64;
        let mut f = 1u64;
        for term in &self.terms {
            let profile = term.profile(p)?;
            psi = profile.build_psi().compose(&psi);
            e *= profile.e();
            f *= profile.f();
            profiles.push(profile);
        }
        let phi = psi.invert();
        Ok(CompiledTower { p, e, f, profiles, phi, psi })
    }
}

fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if (2..c).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
            return c;
        }
        c += 1;
    }
}

/// A compiled tower: the common residue characteristic, total `e` and `f`,
/// the per-term profiles (base first), and the composed Herbrand pair.
pub struct CompiledTower {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub profiles: Vec<RamificationProfile>,
    pub phi: PiecewiseLinearFn,
    pub psi: PiecewiseLinearFn,
}

impl CompiledTower {
    /// Upper-numbering jumps visible in the composed pair: the positive
    /// kinks of `psi`, plus 0 when `phi` leaves 0 with slope < 1 (a
    /// nontrivial tame quotient). For a single term this agrees with the
    /// profile's own jump list.
    pub fn upper_jumps(&self) -> Vec<Rational> {
        let mut jumps = Vec::new();
        if self.phi.first_slope() < &Rational::one() {
            jumps.push(Rational::zero());
        }
        for (x, _) in self.psi.breakpoints() {
            if x > &Rational::zero() {
                jumps.push(x.clone());
            }
        }
        jumps
    }
}
