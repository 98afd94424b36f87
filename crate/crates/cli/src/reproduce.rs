//! Cell-by-cell reconstruction of the qutrit and ququart tables and of the
//! qubit examples, with exact purity comparison.

use clap::ValueEnum;
use kuniform::algebra::SymbolGroup;
use kuniform::constructions::{
    drop_column, ellipse_scheme, mixture_from_partition, parity_scheme, prefix_partition, scheme_to_mixed_state_blocks,
    search_difference_scheme, DifferenceScheme,
};
use kuniform::oa::{
    construct_strength1, feasibility_bound, verify_mixed_state_partition, ExistenceFacts, OrthogonalPartition,
};
use kuniform::quantum::{lower_purity, mixture_purity, ReductionLimits};
use kuniform::recipes;
use kuniform::scalar::purity_string;
use kuniform::search::{SearchBudget, SearchOutcome};
use kuniform::{fixtures, ExactMixture, Rational, Result};

use crate::commands::{uniformity_label, uniformity_scan};
use crate::Report;

/// Reductions up to `4^8` are needed for the 8-uniform 9-ququart cell.
const REDUCTION_GUARD: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Qutrits.
    #[value(name = "1")]
    Qutrit,
    /// Ququarts.
    #[value(name = "2")]
    Ququart,
    Qubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    DiscrepancyNoted,
    SkippedFixture,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::DiscrepancyNoted => "DISCREPANCY-NOTED",
            Status::SkippedFixture => "SKIPPED-FIXTURE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproductionRow {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub expected: Rational,
    pub route: String,
    pub purity: Option<Rational>,
    /// Measured uniformity and whether the scan reached its end.
    pub uniformity: Option<(usize, bool)>,
    /// Attestation letter printed with the table, if any.
    pub h: &'static str,
    /// What the block-count bounds say about this cell.
    pub bound: String,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct Reproduction {
    pub table: Table,
    pub rows: Vec<ReproductionRow>,
}

impl Reproduction {
    pub fn mismatches(&self) -> usize {
        self.count(Status::Mismatch)
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn to_report(&self) -> Report {
        let header = [
            "k",
            "N",
            "d",
            "expected",
            "route",
            "purity",
            "uniformity",
            "H",
            "bound",
            "status",
            "note",
        ]
        .map(String::from)
        .to_vec();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.n.to_string(),
                    r.d.to_string(),
                    purity_string(&r.expected),
                    r.route.clone(),
                    r.purity.as_ref().map_or("-".into(), purity_string),
                    r.uniformity.map_or("-".into(), uniformity_label),
                    if r.h.is_empty() { "-".into() } else { r.h.to_string() },
                    r.bound.clone(),
                    r.status.to_string(),
                    if r.note.is_empty() { "-".into() } else { r.note.clone() },
                ]
            })
            .collect();
        let mut rep = Report::new();
        rep.set_table(header, rows);
        for s in [
            Status::Match,
            Status::Mismatch,
            Status::DiscrepancyNoted,
            Status::SkippedFixture,
        ] {
            rep.field(s.to_string(), self.count(s));
        }
        rep
    }
}

/// How a cell is built.
#[derive(Debug, Clone, Copy)]
enum Route {
    /// `d` constant rows in one block: a pure 1-uniform state.
    Strength1,
    /// Pure states from constructions outside this library.
    External,
    /// `D_s(d^(s-1), s+1, d)` from a parity check.
    Parity(usize),
    Ellipse,
    SchemeFixture(&'static str),
    /// Code fixture, optionally minus its last column, grouped by a prefix.
    CodePrefix {
        code: &'static str,
        drop: bool,
        x: usize,
        k: usize,
    },
    Shift,
    Product,
}

impl Route {
    fn describe(self, d: usize) -> String {
        match self {
            Route::Strength1 => "constant rows".into(),
            Route::External => "external pure state".into(),
            Route::Parity(s) => format!("parity D_{s}({d}^{},{},{d})", s - 1, s + 1),
            Route::Ellipse => format!("conic D_3({},{},{d})", d * d, d + 1),
            Route::SchemeFixture(name) => format!("scheme {name}"),
            Route::CodePrefix { code, drop, x, .. } => {
                format!("{code}{} prefix x={x}", if drop { " minus column" } else { "" })
            }
            Route::Shift => "shift partition of OA(64,5,4,3)".into(),
            Route::Product => "coset product OA(4^7,9,4,6)".into(),
        }
    }

    fn build(self, n: usize, d: usize) -> Result<OrthogonalPartition> {
        let from_scheme = |ds: DifferenceScheme| scheme_to_mixed_state_blocks(&ds);
        match self {
            Route::Strength1 => Ok(OrthogonalPartition::trivial(construct_strength1(n, d)?)),
            Route::External => unreachable!("external cells are skipped before building"),
            Route::Parity(s) => from_scheme(parity_scheme(d, s)?),
            Route::Ellipse => from_scheme(ellipse_scheme(d)?),
            Route::SchemeFixture(name) => from_scheme(fixtures::scheme(name)?),
            Route::CodePrefix { code, drop, x, k } => {
                let mut a = fixtures::code(code)?;
                if drop {
                    a = drop_column(&a, a.cols() - 1)?;
                }
                prefix_partition(&a, x, k)
            }
            Route::Shift => recipes::shift_partition(),
            Route::Product => recipes::ququart_product(),
        }
    }
}

struct Cell {
    k: usize,
    n: usize,
    /// Denominator of the printed purity.
    den: i128,
    route: Route,
    h: &'static str,
}

fn table_cells(d: usize) -> Vec<Cell> {
    use Route::*;
    let pow = |x: usize| (d as i128).pow(x as u32);
    let cell = |k, n, x, route, h| Cell {
        k,
        n,
        den: pow(x),
        route,
        h,
    };
    let mut cells = Vec::new();
    for n in 4..=9 {
        cells.push(cell(1, n, 0, Strength1, ""));
    }
    for n in 4..=9 {
        cells.push(cell(2, n, 0, External, ""));
    }
    let (golay11, golay12) = if d == 3 {
        (fixtures::GOLAY_11, fixtures::GOLAY_12)
    } else {
        (fixtures::QR_11, fixtures::QR_12)
    };
    // Attestation letters of the ququart table differ from the qutrit one
    // past the parity cells.
    let q = |qutrit: &'static str| if d == 3 { qutrit } else { "(e)" };
    if d == 3 {
        cells.push(cell(3, 4, 2, Ellipse, "(b)"));
        cells.push(Cell {
            k: 3,
            n: 5,
            den: 18,
            route: SchemeFixture(fixtures::DS_18_5_3),
            h: "(d)",
        });
    } else {
        cells.push(cell(3, 4, 2, Parity(3), "(b)"));
        cells.push(cell(3, 5, 1, Shift, "(b)"));
    }
    for n in 6..=9 {
        cells.push(cell(3, n, 0, External, ""));
    }
    cells.push(cell(4, 5, 3, Parity(4), "(b)"));
    for (n, h) in [(6, "(c)"), (7, "(a)"), (8, "(a)")] {
        let x = 10 - n;
        let route = CodePrefix {
            code: golay11,
            drop: true,
            x,
            k: 4,
        };
        cells.push(cell(4, n, x, route, q(h)));
    }
    cells.push(cell(4, 9, 0, External, ""));
    cells.push(cell(5, 6, 4, Parity(5), "(b)"));
    for (n, h) in [(7, "(c)"), (8, "(a)"), (9, "(a)")] {
        let x = 12 - n;
        let route = CodePrefix {
            code: golay12,
            drop: false,
            x,
            k: 5,
        };
        cells.push(cell(5, n, x, route, q(h)));
    }
    cells.push(cell(6, 7, 5, Parity(6), "(b)"));
    cells.push(cell(6, 8, 6, Parity(7), q("(c)")));
    if d == 3 {
        cells.push(cell(6, 9, 7, Parity(8), "(e)"));
    } else {
        cells.push(cell(6, 9, 5, Product, "(e)"));
    }
    cells.push(cell(7, 8, 6, Parity(7), "(b)"));
    cells.push(cell(7, 9, 7, Parity(8), q("(c)")));
    cells.push(cell(8, 9, 7, Parity(8), "(b)"));
    cells
}

/// Whether every smaller block count is excluded by the bounds.
fn bound_note(p: &OrthogonalPartition, k: usize, facts: &ExistenceFacts) -> String {
    let a = p.parent();
    let (r, n, d, m) = (a.rows(), a.cols(), a.levels(), p.len());
    let k_prime = n.saturating_sub(k + 1).max(1);
    match feasibility_bound(r, n, d, k, k_prime, facts) {
        Ok(rep) => {
            let open: Vec<usize> = (1..m).filter(|x| r % x == 0 && !rep.is_excluded(*x)).collect();
            match open.first() {
                None => "m minimal for r".into(),
                Some(x) => format!("open (m={x} not excluded)"),
            }
        }
        Err(e) => format!("n/a ({e})"),
    }
}

fn measure(mix: &ExactMixture, k: usize) -> Result<(Rational, (usize, bool))> {
    let purity = mixture_purity(mix);
    let scan = uniformity_scan(mix, k, ReductionLimits::with_max_dim(REDUCTION_GUARD))
        .map_err(|e| kuniform::Error::Verification(e.message))?;
    Ok((purity, scan))
}

fn judge(expected: &Rational, purity: &Rational, scan: (usize, bool), k: usize, combinatorial: bool) -> Status {
    if combinatorial && purity == expected && scan.0 >= k {
        Status::Match
    } else {
        Status::Mismatch
    }
}

fn table_row(d: usize, c: &Cell, facts: &ExistenceFacts) -> ReproductionRow {
    let expected = Rational::new(1, c.den);
    let mut row = ReproductionRow {
        k: c.k,
        n: c.n,
        d,
        expected,
        route: c.route.describe(d),
        purity: None,
        uniformity: None,
        h: c.h,
        bound: "-".into(),
        status: Status::SkippedFixture,
        note: String::new(),
    };
    if let Route::External = c.route {
        row.note = "pure state from a construction with no bundled fixture".into();
        return row;
    }
    let outcome = c.route.build(c.n, d).and_then(|p| {
        let ok = verify_mixed_state_partition(&p, c.k).passed();
        let mix = mixture_from_partition(&p)?;
        Ok((p, ok, measure(&mix, c.k)?))
    });
    match outcome {
        Ok((p, ok, (purity, scan))) => {
            row.status = judge(&expected, &purity, scan, c.k, ok);
            row.bound = bound_note(&p, c.k, facts);
            row.purity = Some(purity);
            row.uniformity = Some(scan);
            if !ok {
                row.note = "combinatorial check failed".into();
            }
        }
        Err(e) => {
            row.status = Status::Mismatch;
            row.note = e.to_string();
        }
    }
    row
}

fn qubit_rows() -> Vec<ReproductionRow> {
    let mut rows = Vec::new();
    let base = |k: usize, n: usize, expected: Rational, route: String| ReproductionRow {
        k,
        n,
        d: 2,
        expected,
        route,
        purity: None,
        uniformity: None,
        h: "",
        bound: "-".into(),
        status: Status::Mismatch,
        note: String::new(),
    };
    for (file, n, k) in fixtures::QUBIT_GENERATORS {
        let mut row = base(k, n, Rational::default(), format!("generators {file}"));
        let res = fixtures::generator(file).and_then(|g| {
            let (pn, pd) = g.predicted_purity();
            let combinatorial = g.check_uniformity(k)?;
            let mix: ExactMixture = g.mixture()?;
            Ok((Rational::new(pn as i128, pd as i128), combinatorial, measure(&mix, k)?))
        });
        fill(&mut row, res);
        rows.push(row);
    }

    let singles = recipes::even_weight_singletons();
    let mut row = base(4, 5, Rational::new(1, 16), "singletons of OA(16,5,2,4)".into());
    fill_partition(&mut row, singles.as_ref().ok().cloned(), 4);
    if row.status == Status::Match {
        row.status = Status::DiscrepancyNoted;
        row.note = "the text calls this state 2-uniform; the array strength and the measurement give 4".into();
    }
    rows.push(row);

    let pair = recipes::complement_pair();
    let mut row = base(3, 7, Rational::new(1, 2), "{A, 1+A} for OA(8,7,2,2)".into());
    fill_partition(&mut row, pair.as_ref().ok().cloned(), 3);
    rows.push(row);

    let mut row = base(3, 7, Rational::new(1, 4), "{A, 1+A} with last qubit flipped".into());
    let lowered = pair.and_then(|p| {
        let mix: ExactMixture = mixture_from_partition(&p)?;
        let low = lower_purity(&mix, 6, 1, &SymbolGroup::new(2)?)?;
        Ok((Rational::new(1, 4), low.overlap.is_none(), measure(&low.mixture, 3)?))
    });
    fill(&mut row, lowered);
    rows.push(row);

    let mut row = base(3, 4, Rational::new(1, 4), "parity D_3(4,4,2)".into());
    fill_partition(
        &mut row,
        parity_scheme(2, 3)
            .and_then(|ds| scheme_to_mixed_state_blocks(&ds))
            .ok(),
        3,
    );
    rows.push(row);

    // The 4-uniform 5-qubit state is attributed to a D_4(8,5,2).
    let mut row = base(4, 5, Rational::new(1, 16), "D_4(8,5,2) search".into());
    let search = search_difference_scheme(8, 5, 2, 4, SearchBudget::default());
    let singles = recipes::even_weight_singletons().ok();
    match search.map(|s| s.outcome) {
        Ok(SearchOutcome::Found(ds)) => {
            fill_partition(&mut row, scheme_to_mixed_state_blocks(&ds).ok(), 4);
        }
        Ok(SearchOutcome::ProvenNonexistent) => {
            fill_partition(&mut row, singles, 4);
            if row.status == Status::Match {
                row.status = Status::DiscrepancyNoted;
                row.note = "D_4(8,5,2) proven nonexistent; purity 1/16 measured on the OA(16,5,2,4) singletons".into();
            }
        }
        Ok(SearchOutcome::BudgetExhausted) => row.note = "search budget exhausted".into(),
        Err(e) => row.note = e.to_string(),
    }
    rows.push(row);
    rows
}

/// Expected purity, combinatorial verdict, measured purity and uniformity scan.
type CellResult = Result<(Rational, bool, (Rational, (usize, bool)))>;

fn fill(row: &mut ReproductionRow, res: CellResult) {
    match res {
        Ok((expected, combinatorial, (purity, scan))) => {
            if row.expected == Rational::default() {
                row.expected = expected;
            }
            row.status = judge(&row.expected, &purity, scan, row.k, combinatorial);
            row.purity = Some(purity);
            row.uniformity = Some(scan);
        }
        Err(e) => {
            row.status = Status::Mismatch;
            row.note = e.to_string();
        }
    }
}

fn fill_partition(row: &mut ReproductionRow, p: Option<OrthogonalPartition>, k: usize) {
    let Some(p) = p else {
        row.status = Status::Mismatch;
        row.note = "construction failed".into();
        return;
    };
    let res = mixture_from_partition(&p).and_then(|mix: ExactMixture| {
        let ok = verify_mixed_state_partition(&p, k).passed();
        Ok((row.expected, ok, measure(&mix, k)?))
    });
    fill(row, res);
}

/// Rebuilds every cell of `table`. Output order is fixed.
pub fn run(table: Table) -> Reproduction {
    let rows = match table {
        Table::Qubit => qubit_rows(),
        Table::Qutrit | Table::Ququart => {
            let d = if table == Table::Qutrit { 3 } else { 4 };
            let facts = fixtures::facts().unwrap_or_default();
            table_cells(d).iter().map(|c| table_row(d, c, &facts)).collect()
        }
    };
    Reproduction { table, rows }
}
