//! Machine-readable verdicts from the axiom suites.
//!
//! Every check produces a [`CheckReport`] carrying its axiom id, a status and
//! the witnesses of any violation. Reports are deterministic for fixed inputs
//! and seed: witnesses are collected in basis order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Identifiers for the axioms verified by the structure suite, in canonical
/// report order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum AxiomId {
    CoproductHomomorphism,
    Coassociativity,
    Counit,
    EIdempotent,
    ERangeT1,
    ERangeT2,
    ECoassoc,
    EDelta,
    ECanonical,
    KernelT1,
    KernelT2,
    Antipode23,
    AntipodeS,
    SourceTarget,
    EFormulas,
    Fullness,
    Regularity,
    // Module-algebra / smash / duality checks reuse the same report type.
    ModuleAssociativity,
    ModuleUnital,
    ModuleNonDegenerate,
    ModuleEq31,
    ModuleEq33,
    ModuleEq34,
    ModuleExtensionMA,
    ModuleExtensionMR,
    SmashAssociativity,
    SmashProjection,
    SmashNonDegenerate,
    SmashPiMaps,
    SmashUniversal,
    SmashBalanced,
    SmashCovariant,
    IntegralInvariance,
    IntegralFaithful,
    PairingLaws,
    PairingSurjective,
    DualSuite,
    HeisenbergSpan,
    ThetaIso,
    DualAction,
    TwistBijective,
    DualityTheorem,
    WmhaIsomorphism,
    MultiplierCompat,
    FiniteSupport,
}

impl AxiomId {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomId::CoproductHomomorphism => "coproduct-homomorphism",
            AxiomId::Coassociativity => "coassociativity",
            AxiomId::Counit => "counit",
            AxiomId::EIdempotent => "e-idempotent",
            AxiomId::ERangeT1 => "e-range-t1",
            AxiomId::ERangeT2 => "e-range-t2",
            AxiomId::ECoassoc => "e-coassoc-2.1",
            AxiomId::EDelta => "e-delta-2.2",
            AxiomId::ECanonical => "e-canonical",
            AxiomId::KernelT1 => "kernel-t1",
            AxiomId::KernelT2 => "kernel-t2",
            AxiomId::Antipode23 => "antipode-2.3",
            AxiomId::AntipodeS => "antipode-s",
            AxiomId::SourceTarget => "source-target",
            AxiomId::EFormulas => "e-formulas-2.6-2.9",
            AxiomId::Fullness => "fullness",
            AxiomId::Regularity => "regularity",
            AxiomId::ModuleAssociativity => "module-associativity",
            AxiomId::ModuleUnital => "module-unital",
            AxiomId::ModuleNonDegenerate => "module-non-degenerate",
            AxiomId::ModuleEq31 => "module-eq-3.1",
            AxiomId::ModuleEq33 => "module-eq-3.3",
            AxiomId::ModuleEq34 => "module-eq-3.4",
            AxiomId::ModuleExtensionMA => "module-extension-m-of-a",
            AxiomId::ModuleExtensionMR => "module-extension-m-of-r",
            AxiomId::SmashAssociativity => "smash-associativity",
            AxiomId::SmashProjection => "smash-projection-4.2",
            AxiomId::SmashNonDegenerate => "smash-non-degenerate",
            AxiomId::SmashPiMaps => "smash-pi-maps",
            AxiomId::SmashUniversal => "smash-universal",
            AxiomId::SmashBalanced => "smash-balanced-tensor",
            AxiomId::SmashCovariant => "smash-covariant",
            AxiomId::IntegralInvariance => "integral-invariance",
            AxiomId::IntegralFaithful => "integral-faithful",
            AxiomId::PairingLaws => "pairing-laws",
            AxiomId::PairingSurjective => "pairing-surjective",
            AxiomId::DualSuite => "dual-suite",
            AxiomId::HeisenbergSpan => "heisenberg-span",
            AxiomId::ThetaIso => "theta-iso",
            AxiomId::DualAction => "dual-action",
            AxiomId::TwistBijective => "twist-bijective",
            AxiomId::DualityTheorem => "duality-theorem",
            AxiomId::WmhaIsomorphism => "wmha-isomorphism",
            AxiomId::MultiplierCompat => "multiplier-compat",
            AxiomId::FiniteSupport => "finite-support",
        }
    }

    /// The axioms of the weak multiplier Hopf algebra suite, in report order.
    pub fn structure_suite() -> &'static [AxiomId] {
        &[
            AxiomId::CoproductHomomorphism,
            AxiomId::Coassociativity,
            AxiomId::Counit,
            AxiomId::EIdempotent,
            AxiomId::ERangeT1,
            AxiomId::ERangeT2,
            AxiomId::ECoassoc,
            AxiomId::EDelta,
            AxiomId::ECanonical,
            AxiomId::KernelT1,
            AxiomId::KernelT2,
            AxiomId::Antipode23,
            AxiomId::AntipodeS,
            AxiomId::SourceTarget,
            AxiomId::EFormulas,
            AxiomId::Fullness,
            AxiomId::Regularity,
        ]
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Passed on a declared sample budget; weaker than an exhaustive pass.
    SampledPass,
    /// Not runnable on this backend (e.g. span checks on a lazy basis).
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::SampledPass => "sampled-pass",
            CheckStatus::Skipped => "skipped",
        }
    }

    pub fn is_ok(&self) -> bool {
        !matches!(self, CheckStatus::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub axiom: AxiomId,
    pub status: CheckStatus,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn pass(axiom: AxiomId) -> Self {
        CheckReport {
            axiom,
            status: CheckStatus::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn sampled(axiom: AxiomId) -> Self {
        CheckReport {
            axiom,
            status: CheckStatus::SampledPass,
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(axiom: AxiomId, reason: impl Into<String>) -> Self {
        CheckReport {
            axiom,
            status: CheckStatus::Skipped,
            witnesses: alloc::vec![reason.into()],
        }
    }

    pub fn from_witnesses(axiom: AxiomId, witnesses: Vec<String>) -> Self {
        let status = if witnesses.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckReport {
            axiom,
            status,
            witnesses,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status.is_ok()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<26} {}", self.axiom.as_str(), self.status.as_str())?;
        for w in &self.witnesses {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn push(&mut self, report: CheckReport) {
        self.checks.push(report);
    }

    pub fn is_pass(&self) -> bool {
        self.checks.iter().all(CheckReport::is_ok)
    }

    pub fn failing(&self) -> Vec<AxiomId> {
        self.checks
            .iter()
            .filter(|c| !c.is_ok())
            .map(|c| c.axiom)
            .collect()
    }

    pub fn find(&self, axiom: AxiomId) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
