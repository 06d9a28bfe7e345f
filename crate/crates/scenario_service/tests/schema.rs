use axum::body::Body;
use axum::http::Request;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use scenario_service::{router, OPENAPI};

fn validator(component: &str) -> jsonschema::Validator {
    let doc: Value = serde_json::from_str(OPENAPI).unwrap();
    let schema = json!({
        "$ref": format!("#/components/schemas/{component}"),
        "components": doc["components"],
    });
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(component: &str, instance: &Value) {
    let v = validator(component);
    let errors: Vec<String> = v.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{component}: {errors:#?}");
}

async fn call(req: Request<Body>) -> (u16, Value) {
    let res = router().oneshot(req).await.unwrap();
    let status = res.status().as_u16();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn post(body: &Value) -> Request<Body> {
    Request::post("/api/project")
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap()
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

#[test]
fn document_is_well_formed() {
    let doc: Value = serde_json::from_str(OPENAPI).unwrap();
    assert_eq!(doc["openapi"], "3.1.0");
    for name in doc["components"]["schemas"].as_object().unwrap().keys() {
        validator(name);
    }
    for path in ["/api/project", "/api/presets", "/api/erosion"] {
        assert!(doc["paths"][path].is_object(), "{path}");
    }
}

#[tokio::test]
async fn project_responses_match_schema() {
    let requests = [
        json!({ "date_of_birth": "1985-10-01", "salary": 30000, "assumptions": { "cpi": 0.028 } }),
        json!({ "date_of_birth": "1970-03-15", "salary": 95000, "rules_new": "uuk2022_adjusted",
                "interpolation": "geometric", "modeller_rounding": true,
                "assumptions": { "cpi": 0.03, "devaluation": "uss" } }),
        json!({ "date_of_birth": "1950-01-01", "salary": 20000 }),
    ];
    for req in &requests {
        assert_valid("ProjectRequest", req);
        let (status, body) = call(post(req)).await;
        assert_eq!(status, 200);
        assert_valid("ProjectResponse", &body);
    }
}

#[tokio::test]
async fn error_responses_match_schema() {
    let bad = json!({ "date_of_birth": "1985-10-01", "salary": 30000, "assumptions": { "cpi": 0.09 } });
    assert!(!validator("ProjectRequest").is_valid(&bad));
    let (status, body) = call(post(&bad)).await;
    assert_eq!(status, 400);
    assert_valid("ErrorBody", &body);

    let drawdown = json!({ "date_of_birth": "1985-10-01", "salary": 30000, "dc_option": "drawdown" });
    let (status, body) = call(post(&drawdown)).await;
    assert_eq!(status, 422);
    assert_valid("ErrorBody", &body);

    let (status, body) = call(get("/api/erosion?d=2")).await;
    assert_eq!(status, 400);
    assert_valid("ErrorBody", &body);
}

#[tokio::test]
async fn presets_and_erosion_match_schema() {
    let (_, body) = call(get("/api/presets")).await;
    assert_valid("PresetListing", &body);
    let (_, body) = call(get("/api/erosion?d=0.008&years=60")).await;
    assert_valid("ErosionCurve", &body);
}

#[test]
fn schema_rejects_unknown_request_fields() {
    let v = validator("ProjectRequest");
    assert!(!v.is_valid(&json!({ "date_of_birth": "1985-10-01", "salary": 1, "colour": "red" })));
    assert!(!v.is_valid(&json!({ "salary": 1 })));
}
