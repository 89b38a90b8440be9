//! Knowledge-based intent engine for next-generation cellular services.
//!
//! The crate models intents as RDF knowledge graphs following the TM Forum
//! Intent Common Model, translates declarative user requests into deployable
//! network intents via knowledge-base queries, runs them on a deterministic
//! discrete-event flow simulator, and produces standards-shaped compliance
//! reports.
//!
//! Module map:
//! - [`rdf`] — terms, triples, set-semantics graphs, Turtle I/O.
//! - [`sparql`] — SELECT/WHERE/FILTER subset parser and evaluator.
//! - [`kb`] — the service/resource/KPI knowledge base and its catalog API.
//! - [`pipeline`] — keyword recognition, intent construction, admission
//!   control and the intent lifecycle.
//! - [`netsim`] — the QoS flow simulator replacing an external testbed.
//! - [`report`] — compliance verdicts and ICM intent/expectation reports.

pub mod kb;
pub mod netsim;
pub mod pipeline;
pub mod rdf;
pub mod report;
pub mod sparql;
pub mod vocab;
