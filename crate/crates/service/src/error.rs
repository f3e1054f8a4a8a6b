use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use dyad_core::{Error, Violation};
use serde::Serialize;

/// An error as sent to clients.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
    pub reason: Option<String>,
    pub violation: Option<Box<Violation>>,
}

#[derive(Serialize)]
struct Body<'a> {
    error: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<&'a Violation>,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
            reason: None,
            violation: None,
        }
    }

    pub fn not_found(id: &str) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, format!("no game with id {id}"))
    }

    pub fn unprocessable(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        let status = match &err {
            Error::IllegalMove { .. } | Error::OutOfTurn(_) => StatusCode::CONFLICT,
            Error::BudgetExceeded { .. } => StatusCode::SERVICE_UNAVAILABLE,
            Error::InternalBreach(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let reason = match &err {
            Error::IllegalMove { reason, .. } => Some(reason.clone()),
            _ => None,
        };
        ApiError {
            status,
            message: err.to_string(),
            reason,
            violation: err.violation().cloned().map(Box::new),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = Body {
            error: &self.message,
            reason: self.reason.as_deref(),
            violation: self.violation.as_deref(),
        };
        (self.status, Json(body)).into_response()
    }
}
