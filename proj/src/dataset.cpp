#include "ranksel/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ranksel/errors.hpp"

namespace ranksel {

LabeledSample DatasetMatrix::feature_sample(std::int64_t j) const {
    if (j < 0 || j >= n_features())
        throw std::out_of_range("feature_sample: column index out of range");
    return LabeledSample(labels, columns[static_cast<std::size_t>(j)]);
}

DatasetMatrix DatasetMatrix::rows_subset(const std::vector<std::int32_t>& rows) const {
    DatasetMatrix out;
    out.feature_names = feature_names;
    out.labels.reserve(rows.size());
    for (std::int32_t r : rows) out.labels.push_back(labels[static_cast<std::size_t>(r)]);
    out.columns.reserve(columns.size());
    for (const auto& col : columns) {
        std::vector<double> sub;
        sub.reserve(rows.size());
        for (std::int32_t r : rows) sub.push_back(col[static_cast<std::size_t>(r)]);
        out.columns.push_back(std::move(sub));
    }
    return out;
}

void DatasetMatrix::validate() const {
    if (labels.empty()) throw std::invalid_argument("DatasetMatrix: no rows");
    if (columns.size() != feature_names.size())
        throw std::invalid_argument("DatasetMatrix: name/column count mismatch");
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != labels.size())
            throw std::invalid_argument("DatasetMatrix: ragged column " + feature_names[j]);
        for (double v : columns[j])
            if (!std::isfinite(v))
                throw std::invalid_argument("DatasetMatrix: non-finite value in " +
                                            feature_names[j]);
    }
    for (std::uint8_t x : labels)
        if (x > 1) throw std::invalid_argument("DatasetMatrix: labels must be 0/1");
}

namespace {

// RFC-4180 tokenizer: returns one record per call, handling quoted fields
// with embedded delimiters, newlines and doubled quotes.
bool read_record(std::istream& in, char delimiter, std::vector<std::string>& fields,
                 long& line_no) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    ++line_no;
    std::string field;
    bool in_quotes = false;
    bool record_done = false;
    while (!record_done) {
        if (c == EOF) {
            record_done = true;
        } else if (in_quotes) {
            if (c == '"') {
                const int peek = in.peek();
                if (peek == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field.push_back(static_cast<char>(c));
            }
            if (!record_done) c = in.get();
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
            c = in.get();
        } else if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
            c = in.get();
        } else if (c == '\r') {
            c = in.get();  // swallow, expect \n next
        } else if (c == '\n') {
            record_done = true;
        } else {
            field.push_back(static_cast<char>(c));
            c = in.get();
        }
    }
    fields.push_back(std::move(field));
    return true;
}

double parse_cell(const std::string& token, long row, long col) {
    if (token.empty()) throw ParseError("empty cell at row " + std::to_string(row) +
                                        ", column " + std::to_string(col), row, col);
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw ParseError("non-numeric cell '" + token + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col), row, col);
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size())
        throw ParseError("non-numeric cell '" + token + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col), row, col);
    if (!std::isfinite(v))
        throw ParseError("non-finite value at row " + std::to_string(row) + ", column " +
                         std::to_string(col), row, col);
    return v;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

DatasetMatrix ingest_csv(const std::string& path, const std::string& label_column,
                         char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + path + "'", 0, 0);

    long line_no = 0;
    std::vector<std::string> header;
    if (!read_record(in, delimiter, header, line_no))
        throw ParseError("empty file (header row required)", 0, 0);

    long label_idx = -1;
    DatasetMatrix data;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = trim(header[c]);
        if (name.empty())
            throw ParseError("empty header cell at column " + std::to_string(c + 1), 1,
                             static_cast<long>(c + 1));
        if (name == label_column) {
            if (label_idx >= 0)
                throw ParseError("duplicate label column '" + label_column + "'", 1,
                                 static_cast<long>(c + 1));
            label_idx = static_cast<long>(c);
        } else {
            data.feature_names.push_back(name);
        }
    }
    if (label_idx < 0)
        throw ParseError("label column '" + label_column + "' not found in header", 1, 0);
    data.columns.resize(data.feature_names.size());

    std::vector<std::string> fields;
    long record_no = 1;
    while (read_record(in, delimiter, fields, line_no)) {
        ++record_no;
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(record_no) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()), record_no, 0);
        std::size_t feature = 0;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (static_cast<long>(c) == label_idx) {
                const std::string token = trim(fields[c]);
                if (token == "0")
                    data.labels.push_back(0);
                else if (token == "1")
                    data.labels.push_back(1);
                else
                    throw ParseError("non-binary label '" + token + "' at row " +
                                     std::to_string(record_no) + ", column " +
                                     std::to_string(c + 1), record_no,
                                     static_cast<long>(c + 1));
            } else {
                data.columns[feature++].push_back(
                    parse_cell(trim(fields[c]), record_no, static_cast<long>(c + 1)));
            }
        }
    }
    if (data.labels.empty())
        throw ParseError("no data rows after the header", 1, 0);
    return data;
}

void write_dataset_csv(const DatasetMatrix& data, const std::string& path,
                       const std::string& label_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << label_column;
    for (const auto& name : data.feature_names) out << ',' << name;
    out << '\n';
    char buf[40];
    for (std::int64_t i = 0; i < data.n_rows(); ++i) {
        out << static_cast<int>(data.labels[static_cast<std::size_t>(i)]);
        for (const auto& col : data.columns) {
            std::snprintf(buf, sizeof(buf), "%.17g", col[static_cast<std::size_t>(i)]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

DatasetMatrix generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n < 2) throw std::domain_error("generate_synthetic: need n >= 2");
    if (spec.p < 1) throw std::domain_error("generate_synthetic: need p >= 1");
    if (spec.n_nonnull < 0 || spec.n_nonnull > spec.p)
        throw std::domain_error("generate_synthetic: n_nonnull out of [0, p]");
    if (spec.rho < 0.0 || spec.rho >= 1.0)
        throw std::domain_error("generate_synthetic: rho out of [0, 1)");
    if (spec.rho_block < 0 || spec.rho_block > spec.p)
        throw std::domain_error("generate_synthetic: rho_block out of [0, p]");

    DatasetMatrix data;
    const std::int64_t n1 = spec.n / 2;
    const std::int64_t n0 = spec.n - n1;
    data.labels.assign(static_cast<std::size_t>(spec.n), 0);
    for (std::int64_t i = n0; i < spec.n; ++i)
        data.labels[static_cast<std::size_t>(i)] = 1;

    std::vector<double> factor;
    if (spec.rho_block > 0 && spec.rho > 0.0) {
        RandomStream fs(make_key(spec.key.seed, StreamPurpose::SyntheticFactor,
                                 spec.key.stream_id));
        factor.resize(static_cast<std::size_t>(spec.n));
        for (auto& f : factor) f = fs.next_normal();
    }
    const double noise_scale = std::sqrt(1.0 - spec.rho);
    const double factor_scale = std::sqrt(spec.rho);

    data.feature_names.reserve(static_cast<std::size_t>(spec.p));
    data.columns.reserve(static_cast<std::size_t>(spec.p));
    for (std::int64_t j = 0; j < spec.p; ++j) {
        data.feature_names.push_back("f" + std::to_string(j + 1));
        RandomStream stream(make_key(spec.key.seed, StreamPurpose::Synthetic,
                                     static_cast<std::uint64_t>(j), spec.key.stream_id));
        std::vector<double> col(static_cast<std::size_t>(spec.n));
        const bool correlated = j < spec.rho_block && !factor.empty();
        for (std::int64_t i = 0; i < spec.n; ++i) {
            double v = stream.next_normal();
            if (correlated)
                v = noise_scale * v + factor_scale * factor[static_cast<std::size_t>(i)];
            if (j < spec.n_nonnull && data.labels[static_cast<std::size_t>(i)] == 1)
                v += spec.shift;
            col[static_cast<std::size_t>(i)] = v;
        }
        data.columns.push_back(std::move(col));
    }
    return data;
}

}  // namespace ranksel
