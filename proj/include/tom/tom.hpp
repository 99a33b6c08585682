#ifndef TOM_TOM_HPP
#define TOM_TOM_HPP

// Topic Overlay Mapping: basemap construction, overlay metrics, document
// clustering and trend analytics for bibliographic corpora.

#include "tom/artifacts.hpp"
#include "tom/basemap.hpp"
#include "tom/community.hpp"
#include "tom/config.hpp"
#include "tom/corpus.hpp"
#include "tom/doc_clustering.hpp"
#include "tom/errors.hpp"
#include "tom/export.hpp"
#include "tom/graph.hpp"
#include "tom/layout.hpp"
#include "tom/linkage.hpp"
#include "tom/matrix.hpp"
#include "tom/overlay.hpp"
#include "tom/pipeline.hpp"
#include "tom/render.hpp"
#include "tom/stemmer.hpp"
#include "tom/text.hpp"
#include "tom/tree_cut.hpp"
#include "tom/trends.hpp"

#endif
