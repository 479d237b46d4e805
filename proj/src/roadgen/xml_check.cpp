#include <string>

#include "roadgen/errors.hpp"
#include "roadgen/export.hpp"
#include "roadgen/xml_dom.hpp"

namespace roadgen {

namespace {

[[noreturn]] void fail_at(const std::vector<char>& buffer, std::size_t offset, const std::string& what) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < buffer.size(); ++i) {
    if (buffer[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError("XML: " + what + " at line " + std::to_string(line) + ", column " + std::to_string(column),
                   line, column);
}

}  // namespace

std::unique_ptr<XmlDocument> parse_xml(std::string_view text) {
  auto out = std::make_unique<XmlDocument>();
  out->buffer.assign(text.begin(), text.end());
  out->buffer.push_back('\0');
  try {
    out->doc.parse<rapidxml::parse_validate_closing_tags | rapidxml::parse_declaration_node>(out->buffer.data());
  } catch (const rapidxml::parse_error& e) {
    const char* where = e.where<char>();
    fail_at(out->buffer, static_cast<std::size_t>(where - out->buffer.data()), e.what());
  }
  int roots = 0;
  for (auto* node = out->doc.first_node(); node != nullptr; node = node->next_sibling()) {
    if (node->type() == rapidxml::node_element) {
      ++roots;
    } else if (node->type() == rapidxml::node_data) {
      for (std::size_t i = 0; i < node->value_size(); ++i) {
        const char c = node->value()[i];
        if (c != ' ' && c != '\n' && c != '\r' && c != '\t') fail_at(out->buffer, 0, "text outside the root element");
      }
    }
  }
  if (roots != 1) fail_at(out->buffer, 0, "expected exactly one root element");
  // Declarations are only needed for the root count above.
  for (auto* node = out->doc.first_node(); node != nullptr;) {
    auto* next = node->next_sibling();
    if (node->type() != rapidxml::node_element) out->doc.remove_node(node);
    node = next;
  }
  return out;
}

std::optional<std::string> check_xml(std::string_view xml) {
  try {
    parse_xml(xml);
  } catch (const ParseError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace roadgen
