#include "fdof/registry.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <mutex>

#include "fdof/trig.hpp"

namespace fdof {

namespace {

using TimePoint = std::chrono::system_clock::time_point;

std::uint64_t to_millis(TimePoint t) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch())
          .count());
}

TimePoint from_millis(std::uint64_t ms) {
  return TimePoint(std::chrono::duration_cast<TimePoint::duration>(
      std::chrono::milliseconds(ms)));
}

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(const unsigned char* p) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(p[i]) << (8 * i);
  }
  return value;
}

constexpr std::size_t kHeaderBytes = 4 + 8 + 1;

}  // namespace

std::string canonical_nquads(const Dataset& ds) {
  std::vector<std::string> lines;
  lines.reserve(ds.size());
  for (const auto& q : ds.quads()) lines.push_back(q.to_nquads());
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string content_etag(const Dataset& ds) {
  const std::string canonical = canonical_nquads(ds);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1) {
    throw RegistryError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

DepositRejected::DepositRejected(ValidationReport report)
    : RegistryError("dataset has " + std::to_string(report.violation_count()) +
                    " violation(s)"),
      report_(std::move(report)) {}

DepositConflict::DepositConflict(std::string gupri)
    : RegistryError("GUPRI \"" + gupri + "\" is already bound to other content"),
      gupri_(std::move(gupri)) {}

NotFound::NotFound(std::string_view gupri)
    : RegistryError("unknown GUPRI \"" + std::string(gupri) + "\"") {}

// ---- journal ----------------------------------------------------------------

std::vector<JournalRecord> Journal::read(const std::filesystem::path& path,
                                         std::uint64_t* valid_bytes) {
  std::vector<JournalRecord> records;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (valid_bytes != nullptr) *valid_bytes = 0;
    if (std::filesystem::exists(path)) {
      throw JournalError("cannot read journal " + path.string());
    }
    return records;
  }
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  std::size_t pos = 0;
  while (data.size() - pos >= kHeaderBytes) {
    const auto length = get_le<std::uint32_t>(bytes + pos);
    if (data.size() - pos - kHeaderBytes < length) break;
    JournalRecord r;
    r.timestamp = from_millis(get_le<std::uint64_t>(bytes + pos + 4));
    const auto flags = bytes[pos + 12];
    if ((flags & ~1U) != 0) {
      throw JournalError("corrupt journal record at byte " + std::to_string(pos));
    }
    r.forced = (flags & 1U) != 0;
    r.trig.assign(data, pos + kHeaderBytes, length);
    records.push_back(std::move(r));
    pos += kHeaderBytes + length;
  }
  if (valid_bytes != nullptr) *valid_bytes = pos;
  return records;
}

Journal::Journal(std::filesystem::path path) : path_(std::move(path)) {
  std::uint64_t valid = 0;
  records_ = read(path_, &valid);
  if (std::filesystem::exists(path_) &&
      std::filesystem::file_size(path_) != valid) {
    std::filesystem::resize_file(path_, valid);
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw JournalError("cannot open journal " + path_.string());
}

void Journal::append(const JournalRecord& record) {
  if (record.trig.size() > UINT32_MAX) throw JournalError("record too large");
  std::string buf;
  buf.reserve(kHeaderBytes + record.trig.size());
  put_le(buf, static_cast<std::uint32_t>(record.trig.size()));
  put_le(buf, to_millis(record.timestamp));
  buf.push_back(static_cast<char>(record.forced ? 1 : 0));
  buf += record.trig;
  out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out_.flush();
  if (!out_) throw JournalError("cannot append to journal " + path_.string());
  records_.push_back(record);
}

// ---- registry ---------------------------------------------------------------

Registry::Registry(RegistryOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = std::chrono::system_clock::now;
  if (!options_.journal) return;
  journal_.emplace(*options_.journal);
  for (std::size_t i = 0; i < journal_->records().size(); ++i) {
    const auto& r = journal_->records()[i];
    try {
      apply(plan(parse_trig(r.trig), r.timestamp, r.forced), nullptr);
    } catch (const std::exception& e) {
      throw JournalError("journal record " + std::to_string(i + 1) + ": " +
                         e.what());
    }
  }
}

std::vector<DepositEntry> Registry::plan(const Dataset& ds, TimePoint at,
                                         bool forced) const {
  const FdofModel model = extract_model(ds);
  std::vector<DepositEntry> out;
  for (const auto& [node, obj] : model.objects) {
    if (!obj.is_fdo() || !node.is_iri() || obj.gupris.empty()) continue;
    Dataset slice;
    std::optional<Term> record_graph;
    auto subject_quads = [&] {
      return ds.filter([&](const Quad& q) { return q.subject == node; });
    };
    if (obj.kinds.has(ObjectKind::MetadataRecord)) {
      slice = subject_quads();
      if (auto rec = model.records.find(node); rec != model.records.end()) {
        slice.merge(rec->second.statements);
        record_graph = node;
      }
    } else if (!obj.described_by.empty()) {
      for (const auto& r : obj.described_by) {
        slice.merge(model.records.at(r).statements);
      }
      record_graph = obj.described_by.front();
    } else {
      slice = subject_quads();
    }
    const std::string etag = content_etag(slice);
    for (const auto& g : obj.gupris) {
      out.push_back(DepositEntry{g, node, record_graph, slice, at, etag,
                                 classify(model, node), forced});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.gupri < b.gupri;
  });
  return out;
}

std::vector<DepositResult> Registry::apply(std::vector<DepositEntry> planned,
                                           const JournalRecord* record) {
  std::unique_lock lock(mutex_);
  std::vector<DepositResult> results;
  std::vector<DepositEntry*> fresh;
  for (std::size_t i = 0; i < planned.size(); ++i) {
    auto& e = planned[i];
    if (i > 0 && planned[i - 1].gupri == e.gupri) {
      if (planned[i - 1].etag != e.etag || planned[i - 1].node != e.node) {
        throw DepositConflict(e.gupri);
      }
      continue;
    }
    auto it = entries_.find(e.gupri);
    if (it != entries_.end()) {
      if (it->second.etag != e.etag || it->second.node != e.node) {
        throw DepositConflict(e.gupri);
      }
    } else {
      fresh.push_back(&e);
    }
    results.push_back({e.gupri, e.etag});
  }
  if (!fresh.empty() && record != nullptr && journal_) journal_->append(*record);
  for (auto* e : fresh) {
    auto key = e->gupri;
    entries_.emplace(std::move(key), std::move(*e));
  }
  return results;
}

std::vector<DepositResult> Registry::deposit(const Dataset& ds, bool force) {
  if (!force) {
    auto report = validate(extract_model(ds), options_.shapes, options_.validate);
    if (!report.conforms()) throw DepositRejected(std::move(report));
  }
  const auto at = from_millis(to_millis(options_.clock()));
  JournalRecord record{at, force, serialize_trig(ds)};
  return apply(plan(ds, at, force), &record);
}

Resolution Registry::resolve(std::string_view gupri) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(gupri);
  if (it == entries_.end()) throw NotFound(gupri);
  const auto& e = it->second;
  if (!e.record_graph) {
    throw Unprocessable("GUPRI \"" + e.gupri + "\" has no describing metadata record");
  }
  return {e.gupri, e.node, e.dataset, e.etag};
}

ClassificationSummary Registry::describe_type(std::string_view gupri) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(gupri);
  if (it == entries_.end()) throw NotFound(gupri);
  return it->second.classification;
}

std::optional<DepositEntry> Registry::entry(std::string_view gupri) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(gupri);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, DepositEntry, std::less<>> Registry::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace fdof
