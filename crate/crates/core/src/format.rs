//! Plain-text file formats.
//!
//! All formats are line oriented ASCII. Blank lines and lines starting with
//! `#` are ignored, except that a `# source: <text>` line in a scheme or code
//! file records where the data came from. Writers emit a canonical form that
//! parses back to an equal object.
//!
//! | kind       | header                       | body                                    |
//! |------------|------------------------------|-----------------------------------------|
//! | generators | `gen <m> <N>`                | `m` rows of `N` symbols in `0..4`       |
//! | array      | `oa <r> <N> <d> <k>`         | `r` rows of `N` symbols                 |
//! | partition  | `partition <m> <k1>`         | `m` stanzas `block <i>` + row indices   |
//! | scheme     | `ds <r> <N> <d> <k>`         | `r` rows of `N` symbols                 |
//! | code       | `code <q> <n> <kappa>`       | `kappa` rows, then `claims strength=<t> md=<x>` |
//! | state      | `state <d> <N> <m>`          | `m` stanzas `component <i> <s>` + terms |
//!
//! A state term line reads `<basis> <re>/<den> <im>/<den>`, with the basis
//! string written one symbol per character and the amplitude given relative
//! to the normalization `1/√s`.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::algebra::Gf4;
use crate::constructions::{CodeClaims, DifferenceScheme, LinearCodeSpec, Provenance};
use crate::error::{Error, Result};
use crate::oa::{OrthogonalArray, OrthogonalPartition, SymbolArray};
use crate::quantum::{MixedState, SparseState};
use crate::stabilizer::GeneratorMatrix;
use crate::Rational;

const SOURCE_PREFIX: &str = "# source:";

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    source: Option<String>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            source: None,
        }
    }

    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if let Some(src) = line.strip_prefix(SOURCE_PREFIX) {
                self.source.get_or_insert_with(|| src.trim().to_string());
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_line()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_line() {
            Some((ln, l)) => Err(Error::parse(ln, format!("unexpected trailing line {l:?}"))),
            None => Ok(()),
        }
    }
}

fn header<const K: usize>(lines: &mut Lines<'_>, keyword: &str) -> Result<(usize, [usize; K])> {
    let (ln, line) = lines.expect(&format!("`{keyword}` header"))?;
    let mut it = line.split_whitespace();
    if it.next() != Some(keyword) {
        return Err(Error::parse(ln, format!("expected `{keyword}` header, found {line:?}")));
    }
    let mut out = [0usize; K];
    for slot in out.iter_mut() {
        *slot = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(ln, format!("`{keyword}` header needs {K} integers")))?;
    }
    if it.next().is_some() {
        return Err(Error::parse(ln, "extra tokens in header"));
    }
    Ok((ln, out))
}

fn symbol_rows(lines: &mut Lines<'_>, r: usize, n: usize, d: usize) -> Result<Vec<Vec<u8>>> {
    (0..r)
        .map(|_| {
            let (ln, line) = lines.expect("array row")?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>()
                        .ok()
                        .filter(|&s| (s as usize) < d)
                        .ok_or_else(|| Error::parse(ln, format!("symbol {t:?} not in 0..{d}")))
                })
                .collect::<Result<Vec<u8>>>()?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("row has {} symbols, expected {n}", row.len())));
            }
            Ok(row)
        })
        .collect()
}

fn write_rows<'a>(out: &mut String, rows: impl Iterator<Item = &'a [u8]>) {
    for r in rows {
        let line = r.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        out.push_str(&line);
        out.push('\n');
    }
}

pub fn parse_generator(text: &str) -> Result<GeneratorMatrix> {
    let mut lines = Lines::new(text);
    let (_, [m, n]) = header::<2>(&mut lines, "gen")?;
    let rows = symbol_rows(&mut lines, m, n, 4)?
        .into_iter()
        .map(|r| r.into_iter().map(|s| Gf4::new(s).expect("range checked")).collect())
        .collect();
    lines.finish()?;
    GeneratorMatrix::new(n, rows)
}

pub fn write_generator(g: &GeneratorMatrix) -> String {
    let mut out = format!("gen {} {}\n", g.generators(), g.qubits());
    let rows: Vec<Vec<u8>> = g.rows().iter().map(|r| r.iter().map(|x| x.value()).collect()).collect();
    write_rows(&mut out, rows.iter().map(Vec::as_slice));
    out
}

/// Parses an array file. The header strength is recorded as the claim; it
/// is not checked here.
pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    let mut lines = Lines::new(text);
    let (ln, [r, n, d, k]) = header::<4>(&mut lines, "oa")?;
    if !(2..=64).contains(&d) || n == 0 {
        return Err(Error::parse(ln, "need d in 2..=64 and N ≥ 1"));
    }
    let rows = symbol_rows(&mut lines, r, n, d)?;
    lines.finish()?;
    OrthogonalArray::new(SymbolArray::new(d, n, rows)?, k)
}

pub fn write_oa(a: &OrthogonalArray) -> String {
    let mut out = format!("oa {} {} {} {}\n", a.rows(), a.cols(), a.levels(), a.claimed_strength());
    write_rows(&mut out, a.iter_rows());
    out
}

/// Parses a partition of `parent`. Structural checks (disjoint, covering,
/// equal sizes) are applied; block strength is a claim.
pub fn parse_partition(text: &str, parent: OrthogonalArray) -> Result<OrthogonalPartition> {
    let mut lines = Lines::new(text);
    let (_, [m, k1]) = header::<2>(&mut lines, "partition")?;
    let r = parent.rows();
    if m == 0 || !r.is_multiple_of(m) {
        return Err(Error::parse(1, format!("{m} blocks cannot split {r} rows")));
    }
    let size = r / m;
    let mut blocks = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, line) = lines.expect("`block` line")?;
        if line != format!("block {i}") {
            return Err(Error::parse(ln, format!("expected `block {i}`, found {line:?}")));
        }
        let block = (0..size)
            .map(|_| {
                let (ln, line) = lines.expect("row index")?;
                line.parse::<usize>()
                    .map_err(|_| Error::parse(ln, format!("bad row index {line:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    lines.finish()?;
    OrthogonalPartition::new(parent, blocks, k1)
}

pub fn write_partition(p: &OrthogonalPartition) -> String {
    let mut out = format!("partition {} {}\n", p.len(), p.block_strength());
    for (i, b) in p.blocks().iter().enumerate() {
        let _ = writeln!(out, "block {i}");
        for idx in b {
            let _ = writeln!(out, "{idx}");
        }
    }
    out
}

/// Parses and verifies a difference scheme.
pub fn parse_ds(text: &str) -> Result<DifferenceScheme> {
    let mut lines = Lines::new(text);
    let (ln, [r, n, d, k]) = header::<4>(&mut lines, "ds")?;
    if !(2..=64).contains(&d) || n == 0 {
        return Err(Error::parse(ln, "need d in 2..=64 and N ≥ 1"));
    }
    let rows = symbol_rows(&mut lines, r, n, d)?;
    lines.finish()?;
    let provenance = match lines.source.as_deref() {
        None => Provenance::Fixture("unspecified".into()),
        Some("printed") => Provenance::Printed,
        Some("searched") => Provenance::Searched,
        Some(s) => match s.strip_prefix("generic:") {
            Some(g) => Provenance::Generic(g.to_string()),
            None => Provenance::Fixture(s.strip_prefix("fixture:").unwrap_or(s).to_string()),
        },
    };
    DifferenceScheme::new(SymbolArray::new(d, n, rows)?, k, provenance)
}

pub fn write_ds(ds: &DifferenceScheme) -> String {
    let a = ds.array();
    let mut out = format!("{SOURCE_PREFIX} {}\n", ds.provenance());
    let _ = writeln!(out, "ds {} {} {} {}", a.rows(), a.cols(), a.levels(), ds.strength());
    write_rows(&mut out, a.iter_rows());
    out
}

pub fn parse_code(text: &str) -> Result<LinearCodeSpec> {
    let mut lines = Lines::new(text);
    let (_, [q, n, kappa]) = header::<3>(&mut lines, "code")?;
    let generator = symbol_rows(&mut lines, kappa, n, q)?;
    let mut claims = None;
    if let Some((ln, line)) = lines.next_line() {
        let mut it = line.split_whitespace();
        if it.next() != Some("claims") {
            return Err(Error::parse(ln, format!("expected claims line, found {line:?}")));
        }
        let mut field = |name: &str| -> Result<usize> {
            it.next()
                .and_then(|t| t.strip_prefix(name))
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(ln, format!("expected `{name}<n>` in claims line")))
        };
        claims = Some(CodeClaims {
            strength: field("strength=")?,
            distance: field("md=")?,
        });
    }
    lines.finish()?;
    Ok(LinearCodeSpec {
        q,
        n,
        generator,
        claims,
        provenance: lines.source.take().unwrap_or_else(|| "unspecified".into()),
    })
}

pub fn write_code(c: &LinearCodeSpec) -> String {
    let mut out = format!("{SOURCE_PREFIX} {}\n", c.provenance);
    let _ = writeln!(out, "code {} {} {}", c.q, c.n, c.dimension());
    write_rows(&mut out, c.generator.iter().map(Vec::as_slice));
    if let Some(cl) = c.claims {
        let _ = writeln!(out, "claims strength={} md={}", cl.strength, cl.distance);
    }
    out
}

fn symbol_char(s: u8) -> char {
    char::from_digit(s as u32, 36).expect("symbol below 36")
}

fn fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn parse_fraction(ln: usize, t: &str) -> Result<Rational> {
    let (n, d) = t
        .split_once('/')
        .ok_or_else(|| Error::parse(ln, format!("expected a fraction, found {t:?}")))?;
    let n: i128 = n
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad numerator in {t:?}")))?;
    let d: i128 = d
        .parse()
        .map_err(|_| Error::parse(ln, format!("bad denominator in {t:?}")))?;
    if d == 0 {
        return Err(Error::parse(ln, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Writes a mixture. Every component must have `‖a‖² = s`, the number of
/// stored terms, so that amplitudes are relative to `1/√s`.
pub fn write_state(mix: &MixedState<Rational>) -> Result<String> {
    let (d, n) = (mix.local_dim(), mix.parties());
    if d > 36 {
        return Err(Error::invalid("state export supports at most 36 levels"));
    }
    let mut out = String::from("# amplitudes are relative to 1/sqrt(s) for a component of s terms\n");
    let _ = writeln!(out, "state {d} {n} {}", mix.len());
    for (i, c) in mix.components().iter().enumerate() {
        if *c.norm_sq() != Rational::from_integer(c.len() as i128) {
            return Err(Error::invalid(format!(
                "component {i} is not normalized to its term count"
            )));
        }
        let _ = writeln!(out, "component {i} {}", c.len());
        for (idx, a) in c.terms() {
            let basis: String = c.basis_string(*idx).into_iter().map(symbol_char).collect();
            let _ = writeln!(out, "{basis} {} {}", fraction(&a.re), fraction(&a.im));
        }
    }
    Ok(out)
}

pub fn parse_state(text: &str) -> Result<MixedState<Rational>> {
    let mut lines = Lines::new(text);
    let (ln, [d, n, m]) = header::<3>(&mut lines, "state")?;
    if !(2..=36).contains(&d) || n == 0 || m == 0 {
        return Err(Error::parse(ln, "need d in 2..=36, N ≥ 1 and m ≥ 1"));
    }
    let mut components = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, line) = lines.expect("`component` line")?;
        let mut it = line.split_whitespace();
        let s: usize = match (it.next(), it.next().and_then(|t| t.parse::<usize>().ok()), it.next()) {
            (Some("component"), Some(idx), Some(s)) if idx == i => {
                s.parse().map_err(|_| Error::parse(ln, "bad term count"))?
            }
            _ => {
                return Err(Error::parse(
                    ln,
                    format!("expected `component {i} <s>`, found {line:?}"),
                ))
            }
        };
        let mut terms = Vec::with_capacity(s);
        for _ in 0..s {
            let (ln, line) = lines.expect("term line")?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [basis, re, im] = toks[..] else {
                return Err(Error::parse(ln, "term line needs basis, real and imaginary parts"));
            };
            let symbols = basis
                .chars()
                .map(|c| c.to_digit(36).filter(|&v| (v as usize) < d).map(|v| v as u8))
                .collect::<Option<Vec<u8>>>()
                .filter(|v| v.len() == n)
                .ok_or_else(|| Error::parse(ln, format!("bad basis string {basis:?}")))?;
            let idx = symbols.iter().fold(0u64, |acc, &x| acc * d as u64 + x as u64);
            terms.push((idx, Complex::new(parse_fraction(ln, re)?, parse_fraction(ln, im)?)));
        }
        let state = SparseState::from_indexed(d, n, terms)?;
        if state.len() != s || *state.norm_sq() != Rational::from_integer(s as i128) {
            return Err(Error::parse(
                ln,
                format!("component {i} is not normalized to {s} terms"),
            ));
        }
        components.push(state);
    }
    lines.finish()?;
    MixedState::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oa_round_trip() {
        let text = "oa 4 3 2 2\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n";
        let a = parse_oa(text).unwrap();
        assert_eq!(write_oa(&a), text);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let a = parse_oa("# header\n\noa 2 2 2 1\n0 1\n# mid\n1 0\n").unwrap();
        assert_eq!(a.rows(), 2);
    }

    #[test]
    fn truncated_array_rejected() {
        assert!(matches!(
            parse_oa("oa 4 3 2 2\n0 0 0\n0 1 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_oa("oa 1 3 2 2\n0 0 0\n0 1 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_oa("oa 1 3 2 2\n0 0 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_oa("oa 1 3 2\n0 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_oa("ds 1 3 2 2\n0 0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn generator_round_trip() {
        let text = "gen 2 3\n0 1 1\n3 3 0\n";
        let g = parse_generator(text).unwrap();
        assert_eq!(write_generator(&g), text);
        assert!(parse_generator("gen 1 2\n0 4\n").is_err());
    }

    #[test]
    fn partition_round_trip() {
        let a = parse_oa("oa 4 2 2 2\n0 0\n0 1\n1 0\n1 1\n").unwrap();
        let text = "partition 2 0\nblock 0\n0\n3\nblock 1\n1\n2\n";
        let p = parse_partition(text, a.clone()).unwrap();
        assert_eq!(write_partition(&p), text);
        assert!(parse_partition("partition 2 0\nblock 0\n0\n3\nblock 1\n1\n3\n", a.clone()).is_err());
        assert!(parse_partition("partition 2 0\nblock 1\n0\n3\nblock 0\n1\n2\n", a).is_err());
    }

    #[test]
    fn ds_round_trip() {
        let text = "# source: printed\nds 4 4 2 3\n0 0 0 0\n0 0 1 1\n0 1 0 1\n0 1 1 0\n";
        let ds = parse_ds(text).unwrap();
        assert_eq!(ds.provenance(), &Provenance::Printed);
        assert_eq!(write_ds(&ds), text);
        assert!(parse_ds("ds 2 2 2 2\n0 0\n0 0\n").is_err());
    }

    #[test]
    fn code_round_trip() {
        let text = "# source: repetition\ncode 3 4 1\n1 1 1 1\nclaims strength=1 md=4\n";
        let c = parse_code(text).unwrap();
        assert_eq!(
            c.claims,
            Some(CodeClaims {
                strength: 1,
                distance: 4
            })
        );
        assert_eq!(write_code(&c), text);
        assert!(parse_code("code 3 4 1\n1 1 1 1\nclaims strength=x md=4\n").is_err());
    }

    #[test]
    fn state_round_trip() {
        let text = "# amplitudes are relative to 1/sqrt(s) for a component of s terms\n\
                    state 2 2 1\ncomponent 0 2\n00 1/1 0/1\n11 0/1 -1/1\n";
        let s = parse_state(text).unwrap();
        assert_eq!(write_state(&s).unwrap(), text);
        assert!(parse_state("state 2 2 1\ncomponent 0 2\n00 1/1 0/1\n11 1/2 0/1\n").is_err());
    }
}
