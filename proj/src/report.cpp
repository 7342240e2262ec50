#include "vsearch/report.hpp"

#include "vsearch/dataset_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

namespace vsearch {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string key_fields(const GroupKey& k) {
    return csv_field(k.model) + "," + std::string(to_string(k.family)) + "," +
           std::string(to_string(k.condition)) + "," + std::string(to_string(k.mode));
}

std::string slug(const GroupKey& k) {
    std::string s = k.label();
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
    return s;
}

struct Series {
    std::vector<double> x, mean, lo, hi;
};

std::string render_svg(const std::string& title, const std::string& y_label, const Series& s, double y_max) {
    constexpr double W = 480, H = 320, L = 56, R = 16, T = 32, B = 44;
    const double x_min = s.x.empty() ? 0 : s.x.front();
    const double x_max = s.x.empty() ? 1 : std::max(s.x.back(), x_min + 1);
    auto px = [&](double x) { return L + (x - x_min) / (x_max - x_min) * (W - L - R); };
    auto py = [&](double y) { return H - B - std::clamp(y / y_max, 0.0, 1.0) * (H - T - B); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"320\" viewBox=\"0 0 480 320\">\n";
    out += "<rect width=\"480\" height=\"320\" fill=\"white\"/>\n";
    out += "<text x=\"240\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
           title + "</text>\n";
    out += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) + "\" y2=\"" + num(H - B) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" + num(H - B) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 10) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">Number of distractors</text>\n";
    out += "<text x=\"14\" y=\"" + num((T + H - B) / 2) + "\" font-family=\"sans-serif\" font-size=\"11\" " +
           "text-anchor=\"middle\" transform=\"rotate(-90 14 " + num((T + H - B) / 2) + ")\">" + y_label +
           "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = y_max * i / 4.0;
        out += "<text x=\"" + num(L - 4) + "\" y=\"" + num(py(v) + 4) +
               "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" + num(v).substr(0, 5) +
               "</text>\n";
    }
    if (!s.x.empty()) {
        std::string band;
        for (std::size_t i = 0; i < s.x.size(); ++i) band += num(px(s.x[i])) + "," + num(py(s.hi[i])) + " ";
        for (std::size_t i = s.x.size(); i-- > 0;) band += num(px(s.x[i])) + "," + num(py(s.lo[i])) + " ";
        band.pop_back();
        out += "<polygon points=\"" + band + "\" fill=\"steelblue\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
        std::string line;
        for (std::size_t i = 0; i < s.x.size(); ++i) line += num(px(s.x[i])) + "," + num(py(s.mean[i])) + " ";
        line.pop_back();
        out += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

} // namespace

std::string accuracy_csv(const std::vector<AccuracyCurve>& curves) {
    std::string out = "model,family,condition,mode,n_distractors,trials,successes,mean,ci_low,ci_high\n";
    for (const auto& c : curves)
        for (const auto& p : c.points)
            out += key_fields(c.key) + "," + std::to_string(p.n_distractors) + "," + std::to_string(p.trials) +
                   "," + std::to_string(p.successes) + "," + num(p.mean) + "," + num(p.ci_low) + "," +
                   num(p.ci_high) + "\n";
    return out;
}

std::string error_csv(const std::vector<ErrorCurve>& curves) {
    std::string out = "model,family,condition,mode,n_distractors,trials,mean_error_px,ci_low,ci_high\n";
    for (const auto& c : curves)
        for (const auto& p : c.points)
            out += key_fields(c.key) + "," + std::to_string(p.n_distractors) + "," + std::to_string(p.trials) +
                   "," + num(p.mean) + "," + num(p.ci_low) + "," + num(p.ci_high) + "\n";
    return out;
}

std::string correlation_csv(const std::vector<CorrelationResult>& rows) {
    std::string out = "model,family,condition,mode,n_trials,r,p_raw,p_adjusted,degenerate,r_set_size_means\n";
    for (const auto& r : rows)
        out += key_fields(r.key) + "," + std::to_string(r.n_trials) + "," + num(r.r) + "," + num(r.p_raw) + "," +
               num(r.p_adjusted) + "," + (r.degenerate ? "true" : "false") + "," + opt_num(r.r_set_size_means) +
               "\n";
    return out;
}

std::string spatial_bias_csv(const std::vector<SpatialBiasTable>& tables) {
    std::string out = "model,family,condition,mode,cell,trials,picks,precision,recall,selection_pct\n";
    for (const auto& t : tables) {
        for (int i = 0; i < 4; ++i) {
            const auto& c = t.cells[static_cast<std::size_t>(i)];
            const Cell cell = cell_from_index(i);
            out += key_fields(t.key) + ",\"(" + std::to_string(cell.row) + "," + std::to_string(cell.col) +
                   ")\"," + std::to_string(t.trials) + "," + std::to_string(c.picks) + "," + opt_num(c.precision) +
                   "," + opt_num(c.recall) + "," + num(c.selection_pct) + "\n";
        }
        out += key_fields(t.key) + ",Invalid," + std::to_string(t.trials) + "," + std::to_string(t.invalid) +
               ",,," + num(t.invalid_pct) + "\n";
    }
    return out;
}

std::string binned_csv(const std::vector<BinnedTable>& tables) {
    std::string out = "model,family,condition,mode,bin,trials,successes,mean\n";
    for (const auto& t : tables)
        for (const auto& r : t.rows)
            out += key_fields(t.key) + "," + r.bin.label() + "," + std::to_string(r.trials) + "," +
                   std::to_string(r.successes) + "," + num(r.mean) + "\n";
    return out;
}

std::string curve_svg(const AccuracyCurve& curve) {
    Series s;
    for (const auto& p : curve.points) {
        s.x.push_back(p.n_distractors);
        s.mean.push_back(p.mean);
        s.lo.push_back(p.ci_low);
        s.hi.push_back(p.ci_high);
    }
    return render_svg(xml_escape(curve.key.label()), "Accuracy", s, 1.0);
}

std::string curve_svg(const ErrorCurve& curve) {
    Series s;
    for (const auto& p : curve.points) {
        s.x.push_back(p.n_distractors);
        s.mean.push_back(p.mean);
        s.lo.push_back(p.ci_low);
        s.hi.push_back(p.ci_high);
    }
    return render_svg(xml_escape(curve.key.label()), "Error (px)", s, 600.0);
}

ReportInput analyse(std::span<const JoinedScore> scores, const std::string& bins) {
    ReportInput in;
    in.accuracy = accuracy_curves(scores);
    in.errors = error_curves(scores);
    in.correlations = set_size_correlations(scores);
    in.spatial_bias = spatial_bias_tables(scores);
    if (bins != "none") {
        if (bins != "human" && bins != "finetune") throw std::invalid_argument("unknown bin scheme " + bins);
        for (const auto& [key, group] : group_scores(scores)) {
            if (key.mode != Mode::Cells) continue;
            const auto edges = bins == "human" ? human_bins(key.family) : finetune_bins();
            // Human bins skip the smallest set sizes; those trials are left out.
            std::vector<JoinedScore> covered;
            for (const auto& s : group)
                if (s.entry.n_distractors >= edges.front().lo && s.entry.n_distractors <= edges.back().hi)
                    covered.push_back(s);
            if (!covered.empty()) in.binned.push_back(bin_results(covered, edges));
        }
    }
    return in;
}

std::vector<std::string> emit_report(const ReportInput& input, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

    nlohmann::json index;
    index["tables"] = nlohmann::json::array();
    index["plots"] = nlohmann::json::array();
    std::vector<std::string> written;

    auto table = [&](const std::string& name, const std::string& kind, std::size_t rows, const std::string& csv) {
        if (rows == 0) return;
        write_text(out_dir / name, csv);
        index["tables"].push_back({{"file", name}, {"kind", kind}, {"groups", rows}});
        written.push_back(name);
    };
    table("accuracy_by_set_size.csv", "accuracy", input.accuracy.size(), accuracy_csv(input.accuracy));
    table("error_by_set_size.csv", "error", input.errors.size(), error_csv(input.errors));
    table("correlations.csv", "correlation", input.correlations.size(), correlation_csv(input.correlations));
    table("spatial_bias.csv", "spatial_bias", input.spatial_bias.size(), spatial_bias_csv(input.spatial_bias));
    table("binned_accuracy.csv", "binned", input.binned.size(), binned_csv(input.binned));

    for (const auto& c : input.accuracy) {
        const std::string name = "accuracy_" + slug(c.key) + ".svg";
        write_text(out_dir / name, curve_svg(c));
        index["plots"].push_back({{"file", name}, {"group", c.key.label()}, {"kind", "accuracy"}});
        written.push_back(name);
    }
    for (const auto& c : input.errors) {
        const std::string name = "error_" + slug(c.key) + ".svg";
        write_text(out_dir / name, curve_svg(c));
        index["plots"].push_back({{"file", name}, {"group", c.key.label()}, {"kind", "error"}});
        written.push_back(name);
    }
    index["entries"] = written.size();
    write_text(out_dir / "index.json", index.dump(2) + "\n");
    written.push_back("index.json");
    return written;
}

} // namespace vsearch
