use std::collections::HashSet;
use std::time::Duration;

use essaylens::pipeline::{
    filter_corpus, generate, FilterConfig, GenerationJob, HttpClient, MockMode, MockServer, PromptTemplate,
};
use essaylens::text::{read_jsonl_str, write_jsonl_string, Author};
use essaylens::Error;

const ESSAY: &str = "Many people believe that young people enjoy life more than older people do. \
I agree with this statement for several reasons. First, young people have fewer responsibilities. \
They do not need to pay bills or raise children. Second, young people are usually healthier. \
They can play sports, travel to distant countries and stay up late without feeling tired. \
Third, young people have more free time after school and on weekends. \
In contrast, older people often worry about their jobs, their families and their health. \
Some older people do enjoy a quiet retirement, gardening or reading novels in the afternoon. \
However, most of them cannot run, dance or explore mountains the way teenagers can. \
In conclusion, youth is a period of freedom, energy and curiosity, which explains why young people enjoy life more.";

fn job(url: &str) -> GenerationJob {
    let mut job = GenerationJob::new(
        url,
        "gpt-3.5-turbo",
        "toefl-001",
        PromptTemplate::standard("Young people enjoy life more than older people do.", 400),
    );
    job.backoff_ms = 1;
    job
}

fn client(url: &str) -> HttpClient {
    HttpClient::with_key(url, Duration::from_secs(10), Some("test-key".into())).unwrap()
}

#[test]
fn fixed_endpoint_yields_thirty_identical_documents() {
    let server = MockServer::start(MockMode::Fixed(ESSAY.into())).unwrap();
    let job = job(&server.url());
    let out = generate(&job, &client(&server.url()), &HashSet::new()).unwrap();
    assert_eq!(out.documents.len(), 30);
    assert!(out.documents.iter().all(|d| d.raw_text() == ESSAY && d.author == Author::Machine));
    assert!(out.documents.iter().all(|d| d.model_name.as_deref() == Some("gpt-3.5-turbo") && d.prompt_id == "toefl-001"));
    let ids: HashSet<_> = out.documents.iter().map(|d| d.id.clone()).collect();
    assert_eq!(ids.len(), 30);
    let (kept, report) = filter_corpus(out.documents, &FilterConfig::default());
    assert_eq!(kept.len(), 1);
    assert_eq!(report.overlapped, 29);
}

#[test]
fn varied_endpoint_survives_filtering_and_reruns_are_skipped() {
    let server = MockServer::start(MockMode::Varied { seed: 9 }).unwrap();
    let job = job(&server.url());
    let out = generate(&job, &client(&server.url()), &HashSet::new()).unwrap();
    assert_eq!(out.documents.len(), 30);
    let (kept, _) = filter_corpus(out.documents.clone(), &FilterConfig::default());
    assert_eq!(kept.len(), 30);

    let before = server.request_count();
    let existing: HashSet<String> = out.documents.iter().map(|d| d.id.clone()).collect();
    let again = generate(&job, &client(&server.url()), &existing).unwrap();
    assert_eq!((again.documents.len(), again.skipped), (0, 30));
    assert_eq!(server.request_count(), before);

    let text = write_jsonl_string(&out.documents);
    let back = read_jsonl_str(&text).unwrap();
    assert_eq!(back, out.documents);
    assert_eq!(write_jsonl_string(&back), text);
}

#[test]
fn rejected_credentials_abort_the_job() {
    let server = MockServer::start(MockMode::Status(401)).unwrap();
    let err = generate(&job(&server.url()), &client(&server.url()), &HashSet::new()).unwrap_err();
    assert!(matches!(err, Error::AuthFailed(401)));
    assert!(server.request_count() < 30);
}

#[test]
fn transient_failures_are_retried() {
    let server = MockServer::start(MockMode::Flaky { failures: 3, seed: 1 }).unwrap();
    let mut job = job(&server.url());
    job.concurrency = 1;
    let out = generate(&job, &client(&server.url()), &HashSet::new()).unwrap();
    assert_eq!(out.documents.len(), 30);
    assert!(out.failures.is_empty());
    assert_eq!(server.request_count(), 33);
}

#[test]
fn persistent_server_errors_make_the_endpoint_unreachable() {
    let server = MockServer::start(MockMode::Status(503)).unwrap();
    let mut job = job(&server.url());
    job.max_retries = 2;
    job.temperatures = vec![0.5];
    job.essays_per_temperature = 2;
    let err = generate(&job, &client(&server.url()), &HashSet::new()).unwrap_err();
    assert!(matches!(err, Error::EndpointUnreachable(_)));
    assert_eq!(server.request_count(), 6);
}

#[test]
fn nothing_listening_is_unreachable() {
    let url = {
        let server = MockServer::start(MockMode::Status(200)).unwrap();
        server.url()
    };
    let mut job = job(&url);
    job.max_retries = 0;
    job.temperatures = vec![0.2];
    job.essays_per_temperature = 1;
    let err = generate(&job, &client(&url), &HashSet::new()).unwrap_err();
    assert!(matches!(err, Error::EndpointUnreachable(_)));
}

#[test]
fn continuation_prefix_is_stripped() {
    let prefix = "Many people believe that young people enjoy life more than older people do.";
    let server = MockServer::start(MockMode::Fixed(ESSAY.into())).unwrap();
    let mut job = job(&server.url());
    job.model_name = "gpt2-xl".into();
    job.continuation_prefixes = vec![prefix.into()];
    job.temperatures = vec![0.5];
    job.essays_per_temperature = 2;
    let out = generate(&job, &client(&server.url()), &HashSet::new()).unwrap();
    assert_eq!(out.documents.len(), 2);
    assert!(out.documents[0].raw_text().starts_with("I agree with this statement"));
}
