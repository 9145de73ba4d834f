//! Deductive chains: linear proofs written goal-first, checked link by link
//! and composed bottom-up into a single witness.

use std::fmt;

use thiserror::Error;

use crate::env::Environment;
use crate::kernel::{self, Fuel, KernelError, Located};
use crate::syntax::{alpha_eq, shift_up, Context, Term, Tm};

/// Link kinds, ordered by strength: a chain's composite kind is the
/// strongest kind among its links.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkKind {
    /// `==`: the two types are definitionally equal.
    DefEqLink,
    /// `~=`: witnessed by an equivalence `lower ~= upper`.
    EquivLink,
    /// `<-`: witnessed by a function `lower -> upper`.
    Consequence,
}

impl LinkKind {
    pub const ALL: [LinkKind; 3] = [LinkKind::DefEqLink, LinkKind::EquivLink, LinkKind::Consequence];

    pub fn marker(self) -> &'static str {
        match self {
            LinkKind::Consequence => "<-",
            LinkKind::EquivLink => "~=",
            LinkKind::DefEqLink => "==",
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.marker())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub kind: LinkKind,
    pub upper: Tm,
    pub lower: Tm,
    pub witness: Option<Tm>,
    pub justification: Option<String>,
}

/// The inhabitation link at the bottom of a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct Closing {
    pub bottom: Tm,
    pub inhabitant: Tm,
    pub justification: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub context: Context,
    pub goal: Tm,
    /// Top to bottom.
    pub links: Vec<Link>,
    pub closing: Option<Closing>,
}

impl Chain {
    /// The lowest type of the chain.
    pub fn bottom(&self) -> &Tm {
        match (&self.closing, self.links.last()) {
            (Some(c), _) => &c.bottom,
            (None, Some(l)) => &l.lower,
            (None, None) => &self.goal,
        }
    }

    pub fn kinds(&self) -> Vec<LinkKind> {
        self.links.iter().map(|l| l.kind).collect()
    }

    /// Builds a chain from its types listed top to bottom and the markers
    /// between them. `types.len()` must be `steps.len() + 1`.
    pub fn from_types(
        context: Context,
        types: Vec<Tm>,
        steps: Vec<(LinkKind, Option<Tm>, Option<String>)>,
        closing: Option<(Tm, Option<String>)>,
    ) -> Chain {
        assert_eq!(types.len(), steps.len() + 1, "chain needs one more type than links");
        let links = steps
            .into_iter()
            .enumerate()
            .map(|(i, (kind, witness, justification))| Link {
                kind,
                upper: types[i].clone(),
                lower: types[i + 1].clone(),
                witness,
                justification,
            })
            .collect();
        let bottom = types.last().unwrap().clone();
        Chain {
            context,
            goal: types[0].clone(),
            links,
            closing: closing.map(|(inhabitant, justification)| Closing {
                bottom,
                inhabitant,
                justification,
            }),
        }
    }
}

/// Per-link outcome in a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkStatus {
    pub index: usize,
    pub kind: LinkKind,
    pub justification: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainResult {
    pub kind: LinkKind,
    /// Inhabits `witness_type` in the chain's context.
    pub witness: Tm,
    pub witness_type: Tm,
    /// Whether the chain ends with an inhabitant, so that `witness` inhabits
    /// the goal itself.
    pub inhabits_goal: bool,
    pub report: Vec<LinkStatus>,
}

/// Chain verification errors. Links are numbered from 1 at the top; the
/// closing link is numbered after the last link, and index 0 refers to the
/// chain as a whole.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum ChainError {
    #[error("cannot classify an empty list of links")]
    EmptyClassification,
    #[error("link {index}: missing witness for `{kind}` link")]
    MissingWitness { index: usize, kind: LinkKind },
    #[error("link {index}: witness does not have the required type: {source}")]
    WitnessMismatch { index: usize, source: KernelError },
    #[error("link {index}: types are not definitionally equal; normal forms `{lower}` and `{upper}`")]
    DefEqFailed {
        index: usize,
        lower: Located,
        upper: Located,
    },
    #[error("link {index}: ill-formed type: {source}")]
    IllFormedType { index: usize, source: KernelError },
    #[error("link {index}: its upper type does not match the type above it")]
    AdjacencyBreach { index: usize },
    #[error("link {index}: closing inhabitant rejected: {source}")]
    Closing { index: usize, source: KernelError },
    #[error("composite witness fails to re-check: {0}")]
    WitnessRecheck(KernelError),
    #[error("middle types of the equivalences differ: `{left}` and `{right}`")]
    MiddleMismatch { left: Located, right: Located },
    #[error("`{0}` is not an equivalence")]
    NotAnEquivalence(Located),
    #[error("the environment lacks `{0}`, which chains with equivalence links need")]
    MissingPrelude(&'static str),
    #[error("{0}")]
    Kernel(KernelError),
}

impl ChainError {
    pub fn link_index(&self) -> usize {
        match self {
            ChainError::MissingWitness { index, .. }
            | ChainError::WitnessMismatch { index, .. }
            | ChainError::DefEqFailed { index, .. }
            | ChainError::IllFormedType { index, .. }
            | ChainError::AdjacencyBreach { index }
            | ChainError::Closing { index, .. } => *index,
            _ => 0,
        }
    }

    pub fn is_fuel_exhausted(&self) -> bool {
        match self {
            ChainError::WitnessMismatch { source, .. }
            | ChainError::IllFormedType { source, .. }
            | ChainError::Closing { source, .. }
            | ChainError::WitnessRecheck(source)
            | ChainError::Kernel(source) => source.is_fuel_exhausted(),
            _ => false,
        }
    }
}

impl From<KernelError> for ChainError {
    fn from(e: KernelError) -> Self {
        ChainError::Kernel(e)
    }
}

/// Composite kind of a chain: `<-` if any link is a consequence, otherwise
/// `~=` if any link is an equivalence, otherwise `==`.
pub fn classify(kinds: &[LinkKind]) -> Result<LinkKind, ChainError> {
    kinds.iter().copied().max().ok_or(ChainError::EmptyClassification)
}

/// Names of the environment constants used to build composite witnesses.
pub const EQUIV: &str = "equiv";
pub const EQUIV_REFL: &str = "equiv_refl";
pub const EQUIV_TRANS: &str = "equiv_trans";
pub const FWD: &str = "fwd";

fn prelude(env: &Environment, name: &'static str) -> Result<Tm, ChainError> {
    if env.contains(name) {
        Ok(Term::constant(name))
    } else {
        Err(ChainError::MissingPrelude(name))
    }
}

/// `A ~= B` as a term.
pub fn equiv_type(env: &Environment, a: Tm, b: Tm) -> Result<Tm, ChainError> {
    Ok(Term::apps(prelude(env, EQUIV)?, [a, b]))
}

/// Checks one link in context `ctx`. `index` is used for error reports.
pub fn verify_link(env: &Environment, ctx: &Context, link: &Link, index: usize, fuel: &Fuel) -> Result<(), ChainError> {
    for ty in [&link.upper, &link.lower] {
        kernel::check_type(env, ctx, ty, fuel).map_err(|source| ChainError::IllFormedType { index, source })?;
    }
    match link.kind {
        LinkKind::DefEqLink => {
            if kernel::def_eq(env, ctx, &link.lower, &link.upper, fuel)? {
                Ok(())
            } else {
                let names = ctx.names();
                let lower = kernel::normalize(env, ctx, &link.lower, fuel)?;
                let upper = kernel::normalize(env, ctx, &link.upper, fuel)?;
                Err(ChainError::DefEqFailed {
                    index,
                    lower: Located::new(lower, &names),
                    upper: Located::new(upper, &names),
                })
            }
        }
        kind => {
            let witness = link
                .witness
                .as_ref()
                .ok_or(ChainError::MissingWitness { index, kind })?;
            let expected = link_type(env, link)?;
            kernel::check(env, ctx, witness, &expected, fuel)
                .map_err(|source| ChainError::WitnessMismatch { index, source })
        }
    }
}

/// The type a link's witness must have.
fn link_type(env: &Environment, link: &Link) -> Result<Tm, ChainError> {
    match link.kind {
        LinkKind::Consequence => Ok(Term::arrow(link.lower.clone(), link.upper.clone())),
        LinkKind::EquivLink => equiv_type(env, link.lower.clone(), link.upper.clone()),
        LinkKind::DefEqLink => Ok(Term::arrow(link.lower.clone(), link.upper.clone())),
    }
}

/// The running composite while a chain is folded from the bottom up.
enum Running {
    Value(Tm),
    Function(Tm),
    Equivalence(Tm),
}

/// Verifies every link and the closing inhabitant, then composes the
/// witnesses. The composite is re-checked by the kernel before it is returned.
pub fn verify_chain(env: &Environment, chain: &Chain, fuel: &Fuel) -> Result<ChainResult, ChainError> {
    let ctx = &chain.context;
    kernel::check_context(env, ctx, fuel)?;
    kernel::check_type(env, ctx, &chain.goal, fuel).map_err(|source| ChainError::IllFormedType { index: 0, source })?;

    let mut above = &chain.goal;
    for (i, link) in chain.links.iter().enumerate() {
        if !alpha_eq(above, &link.upper) {
            return Err(ChainError::AdjacencyBreach { index: i + 1 });
        }
        verify_link(env, ctx, link, i + 1, fuel)?;
        above = &link.lower;
    }
    let closing_index = chain.links.len() + 1;
    if let Some(closing) = &chain.closing {
        if !alpha_eq(above, &closing.bottom) {
            return Err(ChainError::AdjacencyBreach { index: closing_index });
        }
        kernel::check(env, ctx, &closing.inhabitant, &closing.bottom, fuel).map_err(|source| ChainError::Closing {
            index: closing_index,
            source,
        })?;
    }

    let kinds = chain.kinds();
    let kind = classify(&kinds).unwrap_or(LinkKind::DefEqLink);
    let bottom = chain.bottom().clone();

    let mut running = match &chain.closing {
        Some(c) => Running::Value(c.inhabitant.clone()),
        None if kind == LinkKind::EquivLink => {
            Running::Equivalence(Term::app(prelude(env, EQUIV_REFL)?, bottom.clone()))
        }
        None => Running::Function(Term::lambda(bottom.clone(), Term::var(0))),
    };
    for link in chain.links.iter().rev() {
        running = compose_step(env, &bottom, running, link)?;
    }
    let (witness, witness_type) = match running {
        Running::Value(v) => (v, chain.goal.clone()),
        Running::Function(f) => (f, Term::arrow(bottom, chain.goal.clone())),
        Running::Equivalence(e) => (e, equiv_type(env, bottom, chain.goal.clone())?),
    };
    kernel::check(env, ctx, &witness, &witness_type, fuel).map_err(ChainError::WitnessRecheck)?;

    let report = chain
        .links
        .iter()
        .enumerate()
        .map(|(i, l)| LinkStatus {
            index: i + 1,
            kind: l.kind,
            justification: l.justification.clone(),
        })
        .collect();
    Ok(ChainResult {
        kind,
        witness,
        witness_type,
        inhabits_goal: chain.closing.is_some(),
        report,
    })
}

/// Extends the running composite across one link.
fn compose_step(env: &Environment, bottom: &Tm, running: Running, link: &Link) -> Result<Running, ChainError> {
    let degrade = |e: &Tm| -> Result<Tm, ChainError> {
        Ok(Term::apps(
            prelude(env, FWD)?,
            [link.lower.clone(), link.upper.clone(), e.clone()],
        ))
    };
    Ok(match (running, link.kind) {
        (r, LinkKind::DefEqLink) => r,
        (Running::Value(v), LinkKind::Consequence) => Running::Value(Term::app(link.witness.clone().unwrap(), v)),
        (Running::Value(v), LinkKind::EquivLink) => {
            Running::Value(Term::app(degrade(link.witness.as_ref().unwrap())?, v))
        }
        (Running::Function(f), kind) => {
            let step = match kind {
                LinkKind::Consequence => link.witness.clone().unwrap(),
                _ => degrade(link.witness.as_ref().unwrap())?,
            };
            // \x:bottom. step (f x)
            let body = Term::app(shift_up(&step, 1), Term::app(shift_up(&f, 1), Term::var(0)));
            Running::Function(Term::lambda(bottom.clone(), body))
        }
        (Running::Equivalence(e), LinkKind::EquivLink) => Running::Equivalence(Term::apps(
            prelude(env, EQUIV_TRANS)?,
            [
                bottom.clone(),
                link.lower.clone(),
                link.upper.clone(),
                e,
                link.witness.clone().unwrap(),
            ],
        )),
        (Running::Equivalence(_), LinkKind::Consequence) => {
            unreachable!("a chain with a consequence link composes as a function")
        }
    })
}

/// Reads `A` and `B` off the normal form of `A ~= B`, which is a Σ-type whose
/// first component has type `A -> B`.
fn equivalence_ends(env: &Environment, ctx: &Context, e: &Tm, fuel: &Fuel) -> Result<(Tm, Tm), ChainError> {
    let ty = kernel::infer(env, ctx, e, fuel)?;
    if let Term::Sigma(f, _) = &*ty {
        if let Term::Pi(a, b) = &**f {
            if !b.mentions(0) {
                let b = crate::syntax::shift(b, -1, 0).expect("codomain does not mention its binder");
                let expected = equiv_type(env, a.clone(), b.clone())?;
                if kernel::def_eq(env, ctx, &ty, &expected, fuel)? {
                    return Ok((a.clone(), b));
                }
            }
        }
    }
    Err(ChainError::NotAnEquivalence(Located::new(e.clone(), &ctx.names())))
}

/// Composes `e1 : A ~= B` with `e2 : B ~= C` into a witness of `A ~= C`.
pub fn compose_equivalences(env: &Environment, ctx: &Context, e1: &Tm, e2: &Tm, fuel: &Fuel) -> Result<Tm, ChainError> {
    let (a, b) = equivalence_ends(env, ctx, e1, fuel)?;
    let (b2, c) = equivalence_ends(env, ctx, e2, fuel)?;
    if !kernel::def_eq(env, ctx, &b, &b2, fuel)? {
        let names = ctx.names();
        return Err(ChainError::MiddleMismatch {
            left: Located::new(b, &names),
            right: Located::new(b2, &names),
        });
    }
    let composite = Term::apps(
        prelude(env, EQUIV_TRANS)?,
        [a.clone(), b, c.clone(), e1.clone(), e2.clone()],
    );
    kernel::check(env, ctx, &composite, &equiv_type(env, a, c)?, fuel).map_err(ChainError::WitnessRecheck)?;
    Ok(composite)
}
