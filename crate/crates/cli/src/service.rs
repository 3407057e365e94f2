//! Stateless JSON service: every handler is a pure function of its body.

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use plabic_core::io::{parse_value, with_default_anchor, SiteDoc};
use plabic_core::tiling::{build_tiling, embed_tiling, plabic_to_tiling};
use plabic_core::{Budget, Document, Error, WSCollection};

/// Version reported by `GET /health`.
pub const SERVICE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn router() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/validate", post(validate))
        .route("/maximalize", post(maximalize))
        .route("/mutations", post(mutations))
        .route("/mutate", post(mutate))
        .route("/tiling", post(tiling))
        .route("/necklace", post(necklace))
}

/// An error response with a structured body.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    location: Option<String>,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, kind: "invalid-document", location: None, message: message.into() }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { location, message } => ApiError {
                status: StatusCode::BAD_REQUEST,
                kind: "invalid-document",
                location: Some(location),
                message,
            },
            Error::InvalidInput(message) | Error::Embedding(message) => {
                ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, kind: "precondition", location: None, message }
            }
            e @ Error::Budget { .. } => ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                kind: "budget",
                location: None,
                message: e.to_string(),
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({"status": self.status.as_u16(), "kind": self.kind, "message": self.message});
        if let Some(l) = self.location {
            body["location"] = Value::String(l);
        }
        (self.status, Json(json!({ "error": body }))).into_response()
    }
}

type Reply = Result<Json<Value>, ApiError>;

fn body_value(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError {
        status: StatusCode::BAD_REQUEST,
        kind: "invalid-json",
        location: Some(format!("line {} column {}", e.line(), e.column())),
        message: e.to_string(),
    })
}

fn document(body: &Bytes) -> Result<Document, ApiError> {
    Ok(parse_value(body_value(body)?)?)
}

fn collection_of(doc: Document) -> Result<WSCollection, ApiError> {
    match doc {
        Document::Collection(c) => Ok(c),
        other => Err(ApiError::bad_request(format!("expected a collection document, got {}", other.kind()))),
    }
}

fn budget() -> Budget {
    Budget::from_env()
}

async fn health() -> Json<Value> {
    Json(json!({"status": "ok", "version": SERVICE_VERSION}))
}

async fn validate(body: Bytes) -> Reply {
    let doc = document(&body)?;
    let summary = match &doc {
        Document::Collection(c) => {
            let anchored = with_default_anchor(c)?;
            json!({
                "size": c.len(),
                "anchored": c.anchor().is_some(),
                "maximal": anchored.is_maximal(&budget())?,
            })
        }
        Document::PlabicGraph(g) => {
            let verdict = g.check_reduced();
            let faces: Vec<Vec<usize>> = match g.face_labels() {
                Ok(l) => l.sorted_labels().into_iter().map(|s| s.to_vec()).collect(),
                Err(_) => Vec::new(),
            };
            json!({
                "reduced": g.is_reduced(),
                "verdict": verdict.to_string(),
                "permutation": Document::from(g.strand_permutation()).to_value(),
                "faces": faces,
            })
        }
        Document::Necklace(nk) => json!({"length": nk.length(), "connected": nk.is_connected()}),
        Document::Permutation(p) => json!({"length": p.to_necklace().length(), "rank": p.rank()}),
        Document::Tiling(t) => json!({"faces": t.tiling().faces().len()}),
        Document::Report(r) => json!({"verified": r.verified}),
    };
    Ok(Json(json!({"valid": true, "document": doc.to_value(), "summary": summary})))
}

async fn maximalize(body: Bytes) -> Reply {
    let c = with_default_anchor(&collection_of(document(&body)?)?)?;
    let full = c.extend_to_maximal(&budget())?;
    let added: Vec<Vec<usize>> = full.sets().iter().filter(|s| !c.contains(**s)).map(|s| s.to_vec()).collect();
    Ok(Json(json!({"document": Document::from(full).to_value(), "added": added})))
}

async fn mutations(body: Bytes) -> Reply {
    let c = collection_of(document(&body)?)?;
    let sites: Vec<SiteDoc> = c.mutation_sites().iter().map(SiteDoc::from_site).collect();
    Ok(Json(json!({"document": Document::from(c).to_value(), "sites": sites})))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateRequest {
    collection: Value,
    site: SiteDoc,
}

async fn mutate(body: Bytes) -> Reply {
    let req: MutateRequest =
        serde_json::from_value(body_value(&body)?).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let c = collection_of(parse_value(req.collection)?)?;
    let site = req.site.to_site(c.ground()).map_err(|e| match e {
        Error::Parse { message, .. } => Error::InvalidInput(message),
        other => other,
    })?;
    let next = c.apply_mutation(&site)?;
    Ok(Json(json!({
        "document": Document::from(next).to_value(),
        "site": SiteDoc::from_site(&site),
        "mirrored": SiteDoc::from_site(&site.mirrored()),
    })))
}

async fn tiling(body: Bytes) -> Reply {
    let doc = document(&body)?;
    let t = match &doc {
        Document::Collection(c) => build_tiling(c),
        Document::PlabicGraph(g) => plabic_to_tiling(g)?,
        other => return Err(ApiError::bad_request(format!("cannot tile a {} document", other.kind()))),
    };
    let embedded = embed_tiling(&t, None)?;
    Ok(Json(json!({"document": doc.to_value(), "tiling": Document::from(embedded).to_value()})))
}

async fn necklace(body: Bytes) -> Reply {
    let doc = document(&body)?;
    let result = match &doc {
        Document::Permutation(p) => Document::from(p.to_necklace()),
        Document::Necklace(nk) => Document::from(nk.to_decorated()?),
        other => {
            return Err(ApiError::bad_request(format!("expected a permutation or necklace, got {}", other.kind())))
        }
    };
    Ok(Json(json!({"document": doc.to_value(), "result": result.to_value()})))
}
