#include "incite/gexf.hpp"

#include "incite/csv.hpp"
#include "incite/error.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <istream>
#include <ostream>

namespace incite {

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        case '\'':
            out += "&apos;";
            break;
        default:
            out.push_back(c);
        }
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

void check_categories(const RetweetGraph& g, std::span<const DangerCategory> categories) {
    if (categories.size() != g.node_count()) {
        throw InvalidArgument("graph export: " + std::to_string(categories.size()) +
                              " categories for " + std::to_string(g.node_count()) + " nodes");
    }
}

} // namespace

void write_gexf(std::ostream& out, const RetweetGraph& g, std::span<const DangerCategory> categories) {
    check_categories(g, categories);
    const auto description = g.event() ? "retweet graph " + g.event()->name() : std::string("retweet graph");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n"
        << "  <meta>\n"
        << "    <creator>incite</creator>\n"
        << "    <description>" << xml_escape(description) << "</description>\n"
        << "  </meta>\n"
        << "  <graph mode=\"static\" defaultedgetype=\"directed\">\n"
        << "    <attributes class=\"node\">\n"
        << "      <attribute id=\"dac\" title=\"dac\" type=\"string\"/>\n"
        << "      <attribute id=\"n_og\" title=\"n_og\" type=\"integer\"/>\n"
        << "    </attributes>\n"
        << "    <nodes>\n";
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const auto id = xml_escape(g.nodes()[u]);
        out << "      <node id=\"" << id << "\" label=\"" << id << "\">\n"
            << "        <attvalues>\n"
            << "          <attvalue for=\"dac\" value=\"" << to_char(categories[u]) << "\"/>\n"
            << "          <attvalue for=\"n_og\" value=\"" << g.original_count(u) << "\"/>\n"
            << "        </attvalues>\n"
            << "      </node>\n";
    }
    out << "    </nodes>\n"
        << "    <edges>\n";
    std::size_t eid = 0;
    for (const auto& e : g.edges()) {
        out << "      <edge id=\"" << eid++ << "\" source=\"" << xml_escape(g.nodes()[e.from])
            << "\" target=\"" << xml_escape(g.nodes()[e.to]) << "\" weight=\"" << e.weight << "\"/>\n";
    }
    out << "    </edges>\n"
        << "  </graph>\n"
        << "</gexf>\n";
}

GexfGraph read_gexf(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree doc;
    try {
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw DataError(std::string("GEXF: ") + e.what());
    }
    const auto graph = doc.get_child_optional("gexf.graph");
    if (!graph) {
        throw DataError("GEXF: missing <gexf><graph>");
    }

    struct NodeRecord {
        std::string id;
        std::uint64_t n_og = 0;
        DangerCategory dac = DangerCategory::N;
    };
    std::vector<NodeRecord> records;
    if (const auto nodes = graph->get_child_optional("nodes")) {
        for (const auto& [tag, node] : *nodes) {
            if (tag != "node") {
                continue;
            }
            NodeRecord rec;
            rec.id = node.get<std::string>("<xmlattr>.id");
            if (const auto values = node.get_child_optional("attvalues")) {
                for (const auto& [vtag, value] : *values) {
                    if (vtag != "attvalue") {
                        continue;
                    }
                    const auto key = value.get<std::string>("<xmlattr>.for");
                    const auto text = value.get<std::string>("<xmlattr>.value");
                    if (key == "dac" && text.size() == 1) {
                        rec.dac = category_from_char(text[0]);
                    } else if (key == "n_og") {
                        rec.n_og = std::stoull(text);
                    }
                }
            }
            records.push_back(std::move(rec));
        }
    }
    std::sort(records.begin(), records.end(),
              [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });

    std::vector<std::string> ids;
    std::vector<std::uint64_t> counts;
    GexfGraph out;
    for (auto& rec : records) {
        ids.push_back(std::move(rec.id));
        counts.push_back(rec.n_og);
        out.categories.push_back(rec.dac);
    }
    auto index = [&](const std::string& id) {
        const auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) {
            throw DataError("GEXF: edge references unknown node " + id);
        }
        return static_cast<NodeId>(it - ids.begin());
    };
    std::vector<RetweetEdge> edges;
    if (const auto es = graph->get_child_optional("edges")) {
        for (const auto& [tag, edge] : *es) {
            if (tag != "edge") {
                continue;
            }
            edges.push_back({index(edge.get<std::string>("<xmlattr>.source")),
                             index(edge.get<std::string>("<xmlattr>.target")),
                             static_cast<std::uint64_t>(edge.get<double>("<xmlattr>.weight", 1.0))});
        }
    }
    out.graph = RetweetGraph(std::move(ids), std::move(counts), std::move(edges));
    return out;
}

void write_dot(std::ostream& out, const RetweetGraph& g, std::span<const DangerCategory> categories) {
    check_categories(g, categories);
    out << "digraph retweets {\n";
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const char dac = to_char(categories[u]);
        const char* color = dac == 'V' ? "red" : dac == 'M' ? "orange" : "gray";
        out << "  \"" << dot_escape(g.nodes()[u]) << "\" [dac=" << dac << ", n_og=" << g.original_count(u)
            << ", color=" << color << "];\n";
    }
    for (const auto& e : g.edges()) {
        out << "  \"" << dot_escape(g.nodes()[e.from]) << "\" -> \"" << dot_escape(g.nodes()[e.to])
            << "\" [weight=" << e.weight << "];\n";
    }
    out << "}\n";
}

void write_adjacency_csv(std::ostream& out, const RetweetGraph& g) {
    const auto a = adjacency(g);
    csv::row(out, "row", "col", "value");
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto cols = a.row_columns(r);
        const auto vals = a.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            csv::row(out, g.nodes()[r], g.nodes()[cols[k]], vals[k]);
        }
    }
}

} // namespace incite
