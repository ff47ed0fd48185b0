//! Master side of the distributed backend: handshake, a shared task
//! queue drained by one thread per worker connection, and reassignment of
//! in-flight documents when a worker drops out.

use std::collections::VecDeque;
use std::net::{TcpStream, ToSocketAddrs};
use std::sync::{Condvar, Mutex};
use std::thread;
use std::time::Duration;

use log::{info, warn};

use super::protocol::{self, Message, TaskAssign, PROTOCOL_VERSION};
use super::{DocumentResult, ExecError, PipelineConfig};
use crate::corpus::Document;

const CONNECT_TIMEOUT: Duration = Duration::from_secs(5);
const HANDSHAKE_TIMEOUT: Duration = Duration::from_secs(10);

pub(crate) struct DistributedOutput {
    pub results: Vec<DocumentResult>,
    pub lost_workers: Vec<String>,
}

struct Schedule {
    pending: VecDeque<usize>,
    in_flight: usize,
    results: Vec<Option<DocumentResult>>,
    live_workers: usize,
    lost: Vec<String>,
    last_error: String,
}

fn connect(endpoint: &str) -> Result<TcpStream, ExecError> {
    let unreachable = |message: String| ExecError::WorkerUnreachable {
        endpoint: endpoint.to_string(),
        message,
    };
    let addrs: Vec<_> = endpoint
        .to_socket_addrs()
        .map_err(|e| unreachable(e.to_string()))?
        .collect();
    let mut last = String::from("no addresses");
    for addr in addrs {
        match TcpStream::connect_timeout(&addr, CONNECT_TIMEOUT) {
            Ok(mut stream) => {
                let _ = stream.set_nodelay(true);
                stream
                    .set_read_timeout(Some(HANDSHAKE_TIMEOUT))
                    .map_err(|e| unreachable(e.to_string()))?;
                protocol::write_message(&mut stream, &Message::Ping).map_err(|e| unreachable(e.to_string()))?;
                match protocol::read_message(&mut stream) {
                    Ok(Message::Pong(p)) if p.protocol_version == PROTOCOL_VERSION => {
                        stream.set_read_timeout(None).map_err(|e| unreachable(e.to_string()))?;
                        return Ok(stream);
                    }
                    Ok(Message::Pong(p)) => {
                        return Err(unreachable(format!(
                            "protocol version {} (expected {PROTOCOL_VERSION})",
                            p.protocol_version
                        )))
                    }
                    Ok(other) => return Err(unreachable(format!("answered {:?} to Ping", other.kind()))),
                    Err(e) => return Err(unreachable(e.to_string())),
                }
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(unreachable(last))
}

fn task_for(doc: &Document, cfg: &PipelineConfig, digest: &str) -> TaskAssign {
    TaskAssign {
        doc_id: doc.doc_id.clone(),
        text: doc.raw_text.clone(),
        config_digest: digest.to_string(),
        profile_id: cfg.profile.lang_code.clone(),
        stoplist: cfg.stoplist.words().iter().cloned().collect(),
        formulas: cfg.formulas.clone(),
        hard_word_threshold: cfg.hard_word_threshold,
        easy_words: cfg.easy_list.as_ref().map(|e| e.words.iter().cloned().collect()),
    }
}

fn exchange(stream: &mut TcpStream, task: &TaskAssign) -> Result<DocumentResult, String> {
    protocol::write_message(stream, &Message::TaskAssign(task.clone())).map_err(|e| e.to_string())?;
    match protocol::read_message(stream).map_err(|e| e.to_string())? {
        Message::TaskResult(r) if r.doc_id == task.doc_id => Ok(r),
        Message::TaskResult(r) => Err(format!(
            "result for `{}` while `{}` was assigned",
            r.doc_id, task.doc_id
        )),
        Message::Error(e) => Err(e.message),
        other => Err(format!("unexpected {:?} reply", other.kind())),
    }
}

pub(crate) fn run_distributed(
    docs: &[Document],
    cfg: &PipelineConfig,
    endpoints: &[String],
) -> Result<DistributedOutput, ExecError> {
    if endpoints.is_empty() {
        return Err(ExecError::NoEndpoints);
    }
    let streams = endpoints.iter().map(|e| connect(e)).collect::<Result<Vec<_>, _>>()?;
    let digest = cfg.digest();

    let state = Mutex::new(Schedule {
        pending: (0..docs.len()).collect(),
        in_flight: 0,
        results: vec![None; docs.len()],
        live_workers: streams.len(),
        lost: Vec::new(),
        last_error: String::new(),
    });
    let cv = Condvar::new();

    thread::scope(|scope| {
        for (endpoint, mut stream) in endpoints.iter().zip(streams) {
            let (state, cv, digest) = (&state, &cv, digest.as_str());
            scope.spawn(move || {
                loop {
                    let idx = {
                        let mut s = state.lock().expect("schedule lock");
                        loop {
                            if let Some(i) = s.pending.pop_front() {
                                s.in_flight += 1;
                                break Some(i);
                            }
                            if s.in_flight == 0 {
                                break None;
                            }
                            s = cv.wait(s).expect("schedule lock");
                        }
                    };
                    let Some(idx) = idx else {
                        return;
                    };
                    let outcome = exchange(&mut stream, &task_for(&docs[idx], cfg, digest));
                    let mut s = state.lock().expect("schedule lock");
                    s.in_flight -= 1;
                    match outcome {
                        Ok(result) => {
                            // at most one accepted result per document
                            if s.results[idx].is_none() {
                                s.results[idx] = Some(result);
                            }
                            cv.notify_all();
                        }
                        Err(message) => {
                            warn!("worker {endpoint} lost on `{}`: {message}", docs[idx].doc_id);
                            s.pending.push_back(idx);
                            s.live_workers -= 1;
                            s.lost.push(endpoint.clone());
                            s.last_error = message;
                            if s.live_workers == 0 {
                                // nobody left to drain the queue
                                s.in_flight = 0;
                            }
                            cv.notify_all();
                            return;
                        }
                    }
                }
            });
        }
    });

    let s = state.into_inner().expect("schedule lock");
    let missing = s.results.iter().filter(|r| r.is_none()).count();
    if missing > 0 {
        return Err(ExecError::AllWorkersLost {
            pending: missing,
            last_error: s.last_error,
        });
    }
    if !s.lost.is_empty() {
        info!("completed after losing {} worker(s)", s.lost.len());
    }
    Ok(DistributedOutput {
        results: s.results.into_iter().map(|r| r.expect("checked above")).collect(),
        lost_workers: s.lost,
    })
}
