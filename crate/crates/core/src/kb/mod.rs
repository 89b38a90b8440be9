//! Knowledge base: the ICM ontology plus the service, resource and KPI
//! extension models, exposed as a queryable catalog with a registration
//! procedure for new services.

mod catalog;
mod spec;

pub use catalog::{kpi_from_graph, Catalog, SERVICE_KPI_TEMPLATE};
pub use spec::{
    category_of_class, format_number, service_class, Kpi, ResourceKind, ServiceCategory,
    ServiceSpec, DEFAULT_GBR_RATE_BPS,
};

use thiserror::Error;

use crate::rdf::RdfError;
use crate::sparql::SparqlError;

#[derive(Debug, Error)]
pub enum KbError {
    #[error("unknown service '{0}'")]
    UnknownService(String),
    #[error("unknown KPI '{0}'")]
    UnknownKpi(String),
    #[error("ambiguous KPI result for {service}/{kpi}: catalog graph is corrupted")]
    AmbiguousResult { service: String, kpi: String },
    #[error("service '{0}' is already registered")]
    DuplicateService(String),
    #[error("invalid service spec field '{field}': {reason}")]
    InvalidSpec { field: String, reason: String },
    #[error("malformed catalog: {0}")]
    MalformedCatalog(String),
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error(transparent)]
    Sparql(#[from] SparqlError),
}
