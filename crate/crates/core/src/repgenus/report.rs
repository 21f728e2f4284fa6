use std::fmt;

use serde::Serialize;

use super::{Check, ProductStatus, RepError, Representation};

/// Scott's inequality `2 dim V - 2 dim V^G <= sum_i (dim V - dim V^{g_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScottCheck {
    pub ok: bool,
    /// Right side minus left side; equal to `lhs` of the genus formula.
    pub slack: i64,
    /// False when the tuple is not known to generate, in which case the
    /// inequality is evaluated but not guaranteed.
    pub precondition_met: bool,
}

/// Full transcript of a genus computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub representation: String,
    pub n: usize,
    pub dim: usize,
    pub invariant_dim: usize,
    pub entries: Vec<String>,
    pub fixed_dims: Vec<usize>,
    pub lhs: i64,
    pub parity_ok: bool,
    pub genus: Option<i64>,
    pub product: ProductStatus,
    pub generation: Check,
    pub scott: ScottCheck,
    pub witnesses: Vec<String>,
}

impl GenusReport {
    /// Product and generation did not fail and the genus is a non-negative integer.
    pub fn passes(&self) -> bool {
        !self.product.check.is_fail() && !self.generation.is_fail() && self.scott.ok && self.genus.is_some()
    }

    pub fn has_genus(&self, g: i64) -> bool {
        self.passes() && self.genus == Some(g)
    }
}

pub(crate) fn lhs_of(dim: usize, invariant_dim: usize, fixed: &[usize]) -> i64 {
    let d = dim as i64;
    -2 * d + 2 * invariant_dim as i64 + fixed.iter().map(|&f| d - f as i64).sum::<i64>()
}

/// Evaluates the genus formula and every accompanying check.
pub fn genus_of_tuple<R: Representation>(rep: &R, elements: &[R::Element]) -> Result<GenusReport, RepError> {
    let dim = rep.dim();
    let invariant_dim = rep.invariant_dim();
    let fixed_dims = elements.iter().map(|g| rep.fixed_dim(g)).collect::<Result<Vec<_>, _>>()?;
    let lhs = lhs_of(dim, invariant_dim, &fixed_dims);
    let parity_ok = lhs % 2 == 0;
    let genus = parity_ok.then_some(lhs / 2);
    let product = rep.product_status(elements);
    let generation = rep.generation(elements);
    let scott = ScottCheck { ok: lhs >= 0, slack: lhs, precondition_met: generation.is_pass() };

    let mut witnesses = Vec::new();
    if let Some(w) = product.check.witness() {
        witnesses.push(format!("product: {w}"));
    }
    if let Some(w) = generation.witness() {
        witnesses.push(format!("generation: {w}"));
    }
    if !parity_ok {
        witnesses.push(format!("parity: lhs = {lhs} is odd"));
    }
    if !scott.ok {
        witnesses.push(format!("scott: slack {lhs} is negative"));
    }
    Ok(GenusReport {
        representation: rep.describe(),
        n: elements.len(),
        dim,
        invariant_dim,
        entries: elements.iter().map(|g| rep.label(g)).collect(),
        fixed_dims,
        lhs,
        parity_ok,
        genus,
        product,
        generation,
        scott,
        witnesses,
    })
}

/// Scott's inequality alone, evaluated even when generation fails.
pub fn scott_check<R: Representation>(rep: &R, elements: &[R::Element]) -> Result<ScottCheck, RepError> {
    let fixed = elements.iter().map(|g| rep.fixed_dim(g)).collect::<Result<Vec<_>, _>>()?;
    let slack = lhs_of(rep.dim(), rep.invariant_dim(), &fixed);
    Ok(ScottCheck { ok: slack >= 0, slack, precondition_met: rep.generation(elements).is_pass() })
}

fn check_cell(c: &Check) -> String {
    match c {
        Check::Pass => "pass".into(),
        Check::Fail { .. } => "FAIL".into(),
        Check::Assumed { .. } => "assumed".into(),
    }
}

impl fmt::Display for GenusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "representation  {}", self.representation)?;
        writeln!(f, "dim V           {}", self.dim)?;
        writeln!(f, "dim V^G         {}", self.invariant_dim)?;
        writeln!(f, "  i  dim V^g  entry")?;
        for (i, (d, e)) in self.fixed_dims.iter().zip(&self.entries).enumerate() {
            writeln!(f, "{:>3}  {:>7}  {}", i + 1, d, e)?;
        }
        writeln!(f, "lhs             {}", self.lhs)?;
        match self.genus {
            Some(g) => writeln!(f, "genus           {g}")?,
            None => writeln!(f, "genus           undefined (odd lhs)")?,
        }
        let conv = self.product.detected.map_or(String::new(), |c| format!(" ({})", c.name()));
        writeln!(f, "product         {}{}", check_cell(&self.product.check), conv)?;
        writeln!(f, "generation      {}", check_cell(&self.generation))?;
        if let Check::Assumed { reason } = &self.generation {
            writeln!(f, "                {reason}")?;
        }
        writeln!(f, "scott           {} (slack {})", if self.scott.ok { "pass" } else { "FAIL" }, self.scott.slack)?;
        writeln!(f, "parity          {}", if self.parity_ok { "pass" } else { "FAIL" })?;
        for w in &self.witnesses {
            writeln!(f, "witness         {w}")?;
        }
        Ok(())
    }
}
